"""pyparsing grammar for the pipeline language.

::

    expr   := "unit" "(" point ")" | "fromdist" "(" dist ")" | "uniform" "(" region ")"
            | "poisson" "(" number "," region ")" | "bind" "(" expr "," ident "->" expr ")"
            | "thin" "(" expr "," number ")" | "displace" "(" expr "," expr ")"
            | "cluster_demo" "(" ")"
    dist   := "poisson" "(" number ")" | "pmf" "{" number ":" number {"," number ":" number} "}"
    region := "rect" "(" number "," number "," number "," number ")" | "interval" "(" number "," number ")"
            | "set" "{" point {"," point} "}" | "complement" "(" region ")" | "all"
    point  := "star" | natural | number | "(" number "," number ")" | ident

Every production commits after its keyword (pyparsing's ``-`` operator), so a
mistake is reported where it happens instead of at the start of the enclosing
expression. ``#`` starts a comment.
"""

from __future__ import annotations

import re
from functools import lru_cache

import pyparsing as pp

from pointproc.core.errors import DslSyntaxError
from pointproc.dsl.ast import (
    AllR,
    Bind,
    ClusterDemo,
    ComplementR,
    Displace,
    Expr,
    FromDist,
    IntervalR,
    NatLit,
    PairLit,
    PmfDist,
    Poisson,
    PoissonDist,
    RealLit,
    RectR,
    RegionNode,
    SetR,
    StarLit,
    Thin,
    Uniform,
    Unit,
    VarRef,
)

KEYWORDS = (
    "unit",
    "fromdist",
    "uniform",
    "poisson",
    "bind",
    "thin",
    "displace",
    "cluster_demo",
    "pmf",
    "rect",
    "interval",
    "set",
    "complement",
    "all",
    "star",
)

_NATURAL = re.compile(r"\d+")


def _to_number(tokens: pp.ParseResults):
    text = tokens[0]
    return int(text) if _NATURAL.fullmatch(text) else float(text)


@lru_cache(maxsize=None)
def _grammar():
    LPAR, RPAR, COMMA, LBRACE, RBRACE, COLON = map(pp.Suppress, "(),{}:")
    ARROW = pp.Suppress("->")
    kw = {name: pp.Suppress(pp.Keyword(name)) for name in KEYWORDS}

    number = pp.Regex(r"-?\d+(?:\.\d+)?").set_name("number").set_parse_action(_to_number)
    ident = (~pp.MatchFirst([pp.Keyword(k) for k in KEYWORDS]) + pp.Word(pp.alphas + "_", pp.alphanums + "_")).set_name("identifier")

    # points
    star = pp.Keyword("star").set_parse_action(lambda: StarLit())
    pair = (LPAR - number - COMMA - number - RPAR).set_parse_action(lambda t: PairLit(t[0], t[1]))
    scalar = number.copy().add_parse_action(lambda t: NatLit(t[0]) if isinstance(t[0], int) else RealLit(t[0]))
    var = ident.copy().set_parse_action(lambda t: VarRef(t[0]))
    point = (star | pair | scalar | var).set_name("point")

    # regions
    region = pp.Forward().set_name("region")
    rect = (kw["rect"] - LPAR - number - COMMA - number - COMMA - number - COMMA - number - RPAR).set_parse_action(
        lambda t: RectR(t[0], t[1], t[2], t[3])
    )
    interval = (kw["interval"] - LPAR - number - COMMA - number - RPAR).set_parse_action(
        lambda t: IntervalR(t[0], t[1])
    )
    point_set = (kw["set"] - LBRACE - point - pp.ZeroOrMore(COMMA - point) - RBRACE).set_parse_action(
        lambda t: SetR(tuple(t))
    )
    complement = (kw["complement"] - LPAR - region - RPAR).set_parse_action(lambda t: ComplementR(t[0]))
    everything = pp.Keyword("all").set_parse_action(lambda: AllR())
    region <<= rect | interval | point_set | complement | everything

    # count distributions
    entry = pp.Group(number - COLON - number)
    poisson_dist = (kw["poisson"] - LPAR - number - RPAR).set_parse_action(lambda t: PoissonDist(t[0]))
    pmf = (kw["pmf"] - LBRACE - entry - pp.ZeroOrMore(COMMA - entry) - RBRACE).set_parse_action(
        lambda t: PmfDist(tuple((g[0], g[1]) for g in t))
    )
    dist = (poisson_dist | pmf).set_name("distribution")

    # process expressions
    expr = pp.Forward().set_name("expression")
    unit = (kw["unit"] - LPAR - point - RPAR).set_parse_action(lambda t: Unit(t[0]))
    fromdist = (kw["fromdist"] - LPAR - dist - RPAR).set_parse_action(lambda t: FromDist(t[0]))
    uniform = (kw["uniform"] - LPAR - region - RPAR).set_parse_action(lambda t: Uniform(t[0]))
    poisson = (kw["poisson"] - LPAR - number - COMMA - region - RPAR).set_parse_action(
        lambda t: Poisson(t[0], t[1])
    )
    bind = (kw["bind"] - LPAR - expr - COMMA - ident - ARROW - expr - RPAR).set_parse_action(
        lambda t: Bind(t[0], t[1], t[2])
    )
    thin = (kw["thin"] - LPAR - expr - COMMA - number - RPAR).set_parse_action(lambda t: Thin(t[0], t[1]))
    displace = (kw["displace"] - LPAR - expr - COMMA - expr - RPAR).set_parse_action(
        lambda t: Displace(t[0], t[1])
    )
    cluster = (kw["cluster_demo"] - LPAR - RPAR).set_parse_action(lambda: ClusterDemo())
    expr <<= unit | fromdist | uniform | poisson | bind | thin | displace | cluster

    expr.ignore(pp.python_style_comment)
    region.ignore(pp.python_style_comment)
    return expr, region


def _raise_syntax(exc: pp.ParseBaseException) -> None:
    message = exc.msg
    expected = (message[len("Expected ") :],) if message.startswith("Expected ") else ()
    raise DslSyntaxError(message, exc.lineno, exc.col, expected, exc.line) from None


def parse(source: str) -> Expr:
    """Parse pipeline text into an AST.

    Raises
    ------
    DslSyntaxError
        With the 1-based line/column of the first token that does not fit.
    """

    expr, _ = _grammar()
    try:
        return expr.parse_string(source, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        _raise_syntax(exc)


def parse_region(source: str) -> RegionNode:
    """Parse a standalone region literal (the ``--region`` flag)."""

    _, region = _grammar()
    try:
        return region.parse_string(source, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        _raise_syntax(exc)
