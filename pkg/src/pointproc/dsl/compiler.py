"""Turn a pipeline AST into a :class:`PointProcess`.

Compilation runs in two passes. :func:`check` infers the universe of every
subexpression without running anything and raises :class:`DslTypeError`
naming the offending subexpression; :func:`compile_pipeline` then builds the
process. A ``bind`` body that refers to its variable is recompiled for every
drawn point; one that does not is compiled once.
"""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Mapping, Optional

from pointproc.core.errors import DslTypeError, UsageError
from pointproc.core.space import (
    STAR,
    Nat,
    Point,
    Real,
    Real2,
    Region,
    Universe,
    region_complement,
    region_interval,
    region_rect,
    region_set,
    region_universal,
)
from pointproc.dist.discrete import DEFAULT_POISSON_EPSILON, DiscreteDist, dist_from_pmf, poisson_trunc
from pointproc.dsl import ast
from pointproc.process.constructors import (
    cluster_demo,
    displace,
    from_nat_dist,
    poisson_pp,
    thin_constant,
    uniform_point,
)
from pointproc.process.point_process import PointProcess, pp_bind, pp_unit

logger = logging.getLogger(__name__)

Scope = Mapping[str, Universe]


def _fail(message: str, node) -> None:
    raise DslTypeError(message, ast.to_source(node))


# ---------------------------------------------------------------------------
# Static pass
# ---------------------------------------------------------------------------


def point_universe_of(node: ast.PointNode, scope: Scope) -> Universe:
    if isinstance(node, ast.StarLit):
        return Universe.UNIT1
    if isinstance(node, ast.NatLit):
        return Universe.NATS
    if isinstance(node, ast.RealLit):
        return Universe.REAL_LINE
    if isinstance(node, ast.PairLit):
        return Universe.UNIT_SQUARE
    if node.name not in scope:
        _fail(f"unbound variable {node.name!r}", node)
    return scope[node.name]


def region_universe_of(node: ast.RegionNode, scope: Scope, hint: Optional[Universe] = None) -> Universe:
    if isinstance(node, ast.RectR):
        return Universe.UNIT_SQUARE
    if isinstance(node, ast.IntervalR):
        return Universe.REAL_LINE
    if isinstance(node, ast.ComplementR):
        return region_universe_of(node.region, scope, hint)
    if isinstance(node, ast.AllR):
        if hint is None:
            _fail("`all` has no universe to refer to here", node)
        return hint
    universes = {point_universe_of(p, scope) for p in node.points}
    if len(universes) != 1:
        _fail("set mixes points of different universes", node)
    return universes.pop()


def _continuous_region(node: ast.RegionNode, scope: Scope, owner) -> Universe:
    universe = region_universe_of(node, scope)
    if universe.is_discrete:
        _fail(f"uniform points need a real_line or unit_square region, got {universe.value}", owner)
    return universe


def _check_dist(node: ast.DistNode) -> None:
    if isinstance(node, ast.PmfDist):
        for count, _ in node.entries:
            if not isinstance(count, int):
                _fail(f"pmf outcomes are natural numbers, got {count!r}", node)


def check(node: ast.Expr, scope: Optional[Scope] = None) -> Universe:
    """Universe of the process *node* denotes; raises :class:`DslTypeError`."""

    scope = dict(scope or {})
    if isinstance(node, ast.Unit):
        return point_universe_of(node.point, scope)
    if isinstance(node, ast.FromDist):
        _check_dist(node.dist)
        return Universe.UNIT1
    if isinstance(node, (ast.Uniform, ast.Poisson)):
        return _continuous_region(node.region, scope, node)
    if isinstance(node, ast.Bind):
        source = check(node.source, scope)
        return check(node.body, {**scope, node.var: source})
    if isinstance(node, ast.Thin):
        return check(node.source, scope)
    if isinstance(node, ast.Displace):
        for part in (node.source, node.delta):
            if check(part, scope) is not Universe.REAL_LINE:
                _fail("displace needs real_line processes", part)
        return Universe.REAL_LINE
    if isinstance(node, ast.ClusterDemo):
        return Universe.UNIT_SQUARE
    raise TypeError(f"not a pipeline expression: {node!r}")


def free_vars(node) -> FrozenSet[str]:
    if isinstance(node, ast.VarRef):
        return frozenset({node.name})
    if isinstance(node, ast.Bind):
        return free_vars(node.source) | (free_vars(node.body) - {node.var})
    if isinstance(node, tuple):
        return frozenset().union(*(free_vars(x) for x in node))
    fields = getattr(node, "__dataclass_fields__", None)
    if not fields:
        return frozenset()
    return frozenset().union(*(free_vars(getattr(node, name)) for name in fields))


# ---------------------------------------------------------------------------
# Values
# ---------------------------------------------------------------------------


def point_value(node: ast.PointNode, env: Mapping[str, Point]) -> Point:
    if isinstance(node, ast.StarLit):
        return STAR
    if isinstance(node, ast.NatLit):
        return Nat(node.value)
    if isinstance(node, ast.RealLit):
        return Real(node.value)
    if isinstance(node, ast.PairLit):
        return Real2(node.x, node.y)
    return env[node.name]


def compile_region(
    node: ast.RegionNode, universe: Optional[Universe] = None, env: Optional[Mapping[str, Point]] = None
) -> Region:
    """Region denoted by *node*; *universe* resolves ``all``."""

    env = env or {}
    if isinstance(node, ast.RectR):
        return region_rect(node.x0, node.y0, node.x1, node.y1)
    if isinstance(node, ast.IntervalR):
        return region_interval(node.a, node.b)
    if isinstance(node, ast.ComplementR):
        return region_complement(compile_region(node.region, universe, env))
    if isinstance(node, ast.AllR):
        if universe is None:
            _fail("`all` has no universe to refer to here", node)
        return region_universal(universe)
    region = region_set([point_value(p, env) for p in node.points])
    if universe is not None and region.universe is not universe:
        _fail(f"region lives in {region.universe.value}, expected {universe.value}", node)
    return region


def dist_value(node: ast.DistNode, eps: float = DEFAULT_POISSON_EPSILON) -> DiscreteDist:
    if isinstance(node, ast.PoissonDist):
        return poisson_trunc(node.rate, eps)
    pmf: Dict[int, float] = {}
    for count, p in node.entries:
        if count in pmf:
            raise UsageError(f"pmf lists outcome {count} twice")
        pmf[count] = p
    return dist_from_pmf(pmf)


# ---------------------------------------------------------------------------
# Build
# ---------------------------------------------------------------------------


class Compiler:
    """Builds processes for one run; *eps* is the Poisson truncation bound."""

    def __init__(self, eps: float = DEFAULT_POISSON_EPSILON) -> None:
        self.eps = eps

    def build(self, node: ast.Expr, env: Mapping[str, Point], scope: Scope) -> PointProcess:
        if isinstance(node, ast.Unit):
            return pp_unit(point_value(node.point, env))
        if isinstance(node, ast.FromDist):
            return from_nat_dist(dist_value(node.dist, self.eps))
        if isinstance(node, ast.Uniform):
            return uniform_point(compile_region(node.region, env=env))
        if isinstance(node, ast.Poisson):
            return poisson_pp(node.rate, compile_region(node.region, env=env), self.eps)
        if isinstance(node, ast.Bind):
            return self._bind(node, env, scope)
        if isinstance(node, ast.Thin):
            return thin_constant(self.build(node.source, env, scope), node.prob)
        if isinstance(node, ast.Displace):
            return displace(self.build(node.source, env, scope), self.build(node.delta, env, scope))
        if isinstance(node, ast.ClusterDemo):
            return cluster_demo(eps=self.eps)
        raise TypeError(f"not a pipeline expression: {node!r}")

    def _bind(self, node: ast.Bind, env: Mapping[str, Point], scope: Scope) -> PointProcess:
        source = self.build(node.source, env, scope)
        inner_scope = {**scope, node.var: source.universe}
        target = check(node.body, inner_scope)
        if node.var not in free_vars(node.body):
            body = self.build(node.body, env, inner_scope)
            kernel = lambda _x: body  # noqa: E731
        else:

            def kernel(x: Point) -> PointProcess:
                return self.build(node.body, {**env, node.var: x}, inner_scope)

        return pp_bind(source, kernel, universe=target, label=ast.to_source(node))


def compile_pipeline(node: ast.Expr, eps: float = DEFAULT_POISSON_EPSILON) -> PointProcess:
    """Type-check *node* and build its process."""

    universe = check(node)
    logger.debug("pipeline %s checks as %s", ast.to_source(node), universe.value)
    return Compiler(eps).build(node, {}, {})
