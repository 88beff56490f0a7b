"""Pipeline AST nodes and the source printer.

Nodes are frozen dataclasses, so ``parse(to_source(node)) == node`` can be
checked with plain equality. Numbers keep the type they were written with:
digits only parse to ``int``, anything with a sign or a decimal point to
``float``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from pointproc.core.space import format_number

Number = Union[int, float]


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarLit:
    pass


@dataclass(frozen=True)
class NatLit:
    value: int


@dataclass(frozen=True)
class RealLit:
    value: float


@dataclass(frozen=True)
class PairLit:
    x: Number
    y: Number


@dataclass(frozen=True)
class VarRef:
    """A point bound by an enclosing ``bind(E, name -> ...)``."""

    name: str


PointNode = Union[StarLit, NatLit, RealLit, PairLit, VarRef]


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RectR:
    x0: Number
    y0: Number
    x1: Number
    y1: Number


@dataclass(frozen=True)
class IntervalR:
    a: Number
    b: Number


@dataclass(frozen=True)
class SetR:
    points: Tuple[PointNode, ...]


@dataclass(frozen=True)
class ComplementR:
    region: "RegionNode"


@dataclass(frozen=True)
class AllR:
    pass


RegionNode = Union[RectR, IntervalR, SetR, ComplementR, AllR]


# ---------------------------------------------------------------------------
# Count distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PoissonDist:
    rate: Number


@dataclass(frozen=True)
class PmfDist:
    entries: Tuple[Tuple[Number, Number], ...]


DistNode = Union[PoissonDist, PmfDist]


# ---------------------------------------------------------------------------
# Process expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    point: PointNode


@dataclass(frozen=True)
class FromDist:
    dist: DistNode


@dataclass(frozen=True)
class Uniform:
    region: RegionNode


@dataclass(frozen=True)
class Poisson:
    rate: Number
    region: RegionNode


@dataclass(frozen=True)
class Bind:
    source: "Expr"
    var: str
    body: "Expr"


@dataclass(frozen=True)
class Thin:
    source: "Expr"
    prob: Number


@dataclass(frozen=True)
class Displace:
    source: "Expr"
    delta: "Expr"


@dataclass(frozen=True)
class ClusterDemo:
    pass


Expr = Union[Unit, FromDist, Uniform, Poisson, Bind, Thin, Displace, ClusterDemo]


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------


def _num(x: Number) -> str:
    if isinstance(x, int):
        return str(x)
    return format_number(x)


def to_source(node) -> str:
    """Concrete syntax for any AST node (expression, region, point or dist)."""

    if isinstance(node, StarLit):
        return "star"
    if isinstance(node, NatLit):
        return str(node.value)
    if isinstance(node, RealLit):
        return _num(float(node.value))
    if isinstance(node, PairLit):
        return f"({_num(node.x)}, {_num(node.y)})"
    if isinstance(node, VarRef):
        return node.name
    if isinstance(node, RectR):
        return f"rect({_num(node.x0)}, {_num(node.y0)}, {_num(node.x1)}, {_num(node.y1)})"
    if isinstance(node, IntervalR):
        return f"interval({_num(node.a)}, {_num(node.b)})"
    if isinstance(node, SetR):
        return "set{" + ", ".join(to_source(p) for p in node.points) + "}"
    if isinstance(node, ComplementR):
        return f"complement({to_source(node.region)})"
    if isinstance(node, AllR):
        return "all"
    if isinstance(node, PoissonDist):
        return f"poisson({_num(node.rate)})"
    if isinstance(node, PmfDist):
        return "pmf{" + ", ".join(f"{_num(k)}: {_num(p)}" for k, p in node.entries) + "}"
    if isinstance(node, Unit):
        return f"unit({to_source(node.point)})"
    if isinstance(node, FromDist):
        return f"fromdist({to_source(node.dist)})"
    if isinstance(node, Uniform):
        return f"uniform({to_source(node.region)})"
    if isinstance(node, Poisson):
        return f"poisson({_num(node.rate)}, {to_source(node.region)})"
    if isinstance(node, Bind):
        return f"bind({to_source(node.source)}, {node.var} -> {to_source(node.body)})"
    if isinstance(node, Thin):
        return f"thin({to_source(node.source)}, {_num(node.prob)})"
    if isinstance(node, Displace):
        return f"displace({to_source(node.source)}, {to_source(node.delta)})"
    if isinstance(node, ClusterDemo):
        return "cluster_demo()"
    raise TypeError(f"not a pipeline AST node: {node!r}")


def to_tree(node) -> dict:
    """Nested-dict dump used by ``pointproc parse``."""

    if isinstance(node, (int, float, str)):
        return node
    if isinstance(node, tuple):
        return [to_tree(x) for x in node]
    fields = {name: to_tree(getattr(node, name)) for name in node.__dataclass_fields__}
    return {"node": type(node).__name__, **fields}
