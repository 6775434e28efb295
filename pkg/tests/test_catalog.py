"""Closed forms against their defining products, polynomials against theta values."""

import json

import pytest
from mpmath import mp, mpf

from rrcf import CATALOG, POLYNOMIALS, PrecisionCtx, SurdArg
from rrcf import invariants as inv
from rrcf.catalog import A_VALUES, catalog_json, dump_catalog, load_catalog
from rrcf.radicals import parse
from rrcf.recognition.minpoly import is_irreducible
from rrcf.recognition.roots import designated_root, real_roots


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_entry_matches_reference(ctx, name):
    e = CATALOG[name]
    v, ref = e.evaluate(ctx), e.reference_value(ctx)
    with ctx.working():
        assert abs(v.value - ref.value) < mpf(10) ** (-(ctx.digits - 20)) * max(1, abs(ref.value))


def test_printed_G15_exponent_is_off(ctx):
    # the printed fifth-root form disagrees with the product in the first digit
    e = CATALOG["G_15"]
    with ctx.working():
        printed = parse(e.printed_expression).evaluate()
        assert abs(printed - e.reference_value(ctx).value) > mpf("0.01")


def test_conjecture_status():
    assert CATALOG["R5_16_15"].status == "conjectural"
    assert all(e.status == "proved" for k, e in CATALOG.items() if k != "R5_16_15")


class TestPolynomials:
    @pytest.mark.parametrize("name", sorted(POLYNOMIALS))
    def test_irreducible(self, name):
        assert is_irreducible(POLYNOMIALS[name].coeffs)

    @pytest.mark.parametrize("name", ["lambda_star_26_5", "lambda_star_38_5"])
    def test_palindromic_degree_eight(self, name):
        c = POLYNOMIALS[name].coeffs
        assert len(c) == 9 and c[0] == c[-1] == 1

    @pytest.mark.parametrize(
        "name, r",
        [("lambda_star_26_5", SurdArg(26, 5)), ("lambda_star_38_5", SurdArg(38, 5)), ("lambda_star_48_5", SurdArg(48, 5))],
    )
    def test_designated_root_is_lambda_star(self, ctx, name, r):
        p = POLYNOMIALS[name]
        root = designated_root(p.coeffs, p.cas_index, ctx)
        assert root.agrees_with(inv.lambda_star(r, ctx), 10)

    def test_alpha_root_is_smallest_of_eight(self, ctx):
        p = POLYNOMIALS["alpha_240"]
        roots = real_roots(p.coeffs, ctx)
        assert len(roots) == 8
        with ctx.working():
            alpha = inv.lambda_star(SurdArg(240), ctx).value ** 2
            assert abs(roots[0].value - alpha) < mpf(10) ** (-(ctx.digits - 10)) * alpha


class TestSerialization:
    def test_json_round_trip(self, tmp_path, ctx):
        path = tmp_path / "catalog.json"
        dump_catalog(path)
        loaded = load_catalog(path)
        assert set(loaded) == set(CATALOG)
        for k, e in loaded.items():
            assert e == CATALOG[k]
        again = json.dumps(catalog_json(list(loaded.values())), sort_keys=True)
        assert again == json.dumps(catalog_json(), sort_keys=True)

    def test_version_checked(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"version": 99, "entries": []}))
        with pytest.raises(ValueError):
            load_catalog(path)


@pytest.mark.parametrize("key", sorted(A_VALUES))
def test_a_values_parse(key):
    with mp.workdps(30):
        assert parse(A_VALUES[key]).evaluate() > 0
