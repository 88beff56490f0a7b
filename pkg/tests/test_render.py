"""CSV, JSON and SVG emitters."""

from __future__ import annotations

import json
from pathlib import Path

from pointproc.core.bag import EMPTY_BAG, Bag
from pointproc.core.config import RunConfig
from pointproc.core.space import STAR, Nat, Real, Real2, Universe
from pointproc.dsl.parser import parse
from pointproc.output.render import draws_to_csv, draws_to_json, draws_to_svg, render_draws
from pointproc.workflows.runs import run_draws

GOLDEN = Path(__file__).resolve().parent / "golden"


def test_csv_has_one_row_per_point():
    bags = [Bag.of(STAR, STAR), EMPTY_BAG, Bag.of(STAR)]
    assert draws_to_csv(bags, Universe.UNIT1) == "draw,x\n0,star\n0,star\n2,star\n"


def test_csv_for_unit_square():
    bags = [Bag.of(Real2(0.5, 0.25))]
    assert draws_to_csv(bags, Universe.UNIT_SQUARE) == "draw,x,y\n0,0.5,0.25\n"


def test_json_layout():
    payload = json.loads(draws_to_json([Bag.of(Nat(2), Nat(2)), EMPTY_BAG], Universe.NATS, 7))
    assert payload == {"universe": "nats", "seed": 7, "draws": [[2, 2], []]}


def test_number_line_spans_observed_range():
    svg = draws_to_svg([Bag.of(Real(-1.0)), Bag.of(Real(1.0))], Universe.REAL_LINE)
    assert '<circle cx="20.000" cy="25.000" r="3"/>' in svg
    assert '<circle cx="480.000" cy="75.000" r="3"/>' in svg


def test_render_dispatches_on_format():
    bags = [Bag.of(STAR)]
    assert render_draws(bags, Universe.UNIT1, "csv", 1).startswith("draw,x\n")
    assert render_draws(bags, Universe.UNIT1, "svg", 1).startswith("<svg ")
    assert json.loads(render_draws(bags, Universe.UNIT1, "json", 1))["draws"] == [["star"]]


def test_unit_square_golden_svg():
    cfg = RunConfig(seed=1, draws=2, output_format="svg")
    out = run_draws(parse("unit((0.25, 0.75))"), cfg)
    assert out == (GOLDEN / "unit_point_two_draws.svg").read_text(encoding="utf-8")


def test_stacked_stars_golden_svg():
    cfg = RunConfig(seed=1, draws=2, output_format="svg")
    out = run_draws(parse("fromdist(pmf{3: 1.0})"), cfg)
    assert out == (GOLDEN / "three_stars_two_draws.svg").read_text(encoding="utf-8")


def test_fig1_golden_svg():
    cfg = RunConfig(seed=7, draws=3, output_format="svg")
    out = run_draws(parse("poisson(10, rect(0, 0, 1, 1))"), cfg)
    assert out == (GOLDEN / "fig1_seed7_three_draws.svg").read_text(encoding="utf-8")


def test_fig4_golden_svg():
    cfg = RunConfig(seed=7, draws=2, output_format="svg")
    out = run_draws(parse("cluster_demo()"), cfg)
    assert out == (GOLDEN / "fig4_seed7_two_draws.svg").read_text(encoding="utf-8")


def test_fig1_svg_is_byte_stable():
    cfg = RunConfig(seed=20240601, draws=5, output_format="svg")
    pipeline = parse("poisson(10, rect(0,0,1,1))")
    first = run_draws(pipeline, cfg)
    assert first == run_draws(pipeline, cfg)
    assert first.count("<rect ") == 5
