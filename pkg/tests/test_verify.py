"""Certificates, identity checks, and the theorem pipelines."""

import json
import random
import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from rrcf import DomainError, PrecisionCtx, SingularityError, SurdArg
from rrcf import invariants as inv
from rrcf.qseries import eval_R_product
from rrcf.verify.certificate import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    SUPPORTED,
    Certificate,
    CertificateWriter,
    certify,
    classify,
    combine,
    read_certificates,
)
from rrcf.verify.checks import (
    check_companion,
    check_icosahedral,
    check_order25,
    check_recursions,
    companion_residuals,
    yi_map,
)
from rrcf.verify.theorems import THEOREM_IDS, order25_sources, reproduce_theorem


def _exact_zero(c):
    return mpf(0)


class TestClassify:
    def test_noise_floor_certifies(self):
        assert classify(mpf(0), mpf(0), 300, 600, 50) == CERTIFIED

    def test_constant_gap_refutes(self):
        assert classify(mpf("1e-20"), mpf("1e-20"), 300, 600, 50) == REFUTED

    def test_small_but_stalled_is_not_certified(self):
        # 1e-260 at both levels: small, but it does not shrink with precision
        assert classify(mpf("1e-260"), mpf("1e-260"), 300, 600, 50) == INCONCLUSIVE

    @given(st.integers(100, 400), st.integers(20, 49), st.integers(0, 900))
    def test_certified_implies_shrinkage(self, d, g, e):
        lo, hi = mpf(10) ** -e, mpf(10) ** -(e + d - g)
        if classify(lo, hi, d, 2 * d, g) == CERTIFIED:
            floor_lo = max(lo, mpf(10) ** -(d + g))
            assert max(hi, mpf(10) ** -(2 * d + g)) <= floor_lo * mpf(10) ** -(d - g)


class TestCertify:
    def test_zero_residual(self, ctx):
        cert = certify("zero", _exact_zero, ctx)
        assert cert.verdict == CERTIFIED and cert.digits_hi == 2 * cert.digits_lo

    def test_retry_doubles(self, ctx):
        # residual 1e-180: inconclusive at 200/400, still inconclusive after the retry
        cert = certify("stuck", lambda c: mpf(10) ** -180, ctx)
        assert cert.verdict == INCONCLUSIVE and cert.digits_lo == 400

    def test_error_becomes_inconclusive(self, ctx):
        def boom(c):
            raise DomainError("nope")

        cert = certify("boom", boom, ctx)
        assert cert.verdict == INCONCLUSIVE and "DomainError" in cert.artifacts[-1]["error"]

    def test_cap(self, ctx):
        assert certify("z", _exact_zero, ctx, cap=SUPPORTED).verdict == SUPPORTED

    def test_json_round_trip(self, ctx):
        cert = certify("zero", _exact_zero, ctx, artifacts=[{"k": 1}])
        line = cert.to_jsonl()
        back = Certificate.from_json(json.loads(line))
        assert back.to_jsonl() == line
        assert set(json.loads(line)) == {
            "claim_id", "digits_lo", "digits_hi", "residual_lo", "residual_hi", "verdict", "artifacts", "wall_time_ms"
        }

    def test_combine_takes_weakest(self, ctx):
        good = certify("a", _exact_zero, ctx)
        bad = certify("b", lambda c: mpf(1), ctx)
        assert combine("both", [good, bad]).verdict == REFUTED
        assert combine("one", [good], cap=SUPPORTED).verdict == SUPPORTED


class TestWriter:
    def test_threads_share_single_writer(self, tmp_path, ctx):
        path = tmp_path / "certs.jsonl"
        cert = certify("z", _exact_zero, ctx)
        with CertificateWriter(path) as w:
            threads = [threading.Thread(target=lambda: [w.write(cert) for _ in range(25)]) for _ in range(4)]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        certs = read_certificates(path)
        assert len(certs) == 100 and all(c.verdict == CERTIFIED for c in certs)


class TestIdentities:
    @pytest.mark.parametrize("q", ["0.2", "0.15", "0.5"])
    def test_companion_and_recursions(self, ctx, q):
        assert check_companion(q, ctx).verdict == CERTIFIED
        assert check_recursions(q, ctx).verdict == CERTIFIED

    def test_at_exp_minus_2pi(self, ctx):
        assert check_companion(SurdArg(4), ctx).verdict == CERTIFIED

    def test_tiny_q(self, ctx):
        assert check_recursions(mpf(10) ** -40, ctx).verdict == CERTIFIED

    def test_companion_leading_order(self, ctx):
        # both sides ~ q^(-1/5) as q -> 0
        q = mpf(10) ** -50
        with ctx.working():
            assert companion_residuals(q, ctx)[0] < mpf(10) ** -(ctx.digits - 10)

    def test_bad_q(self, ctx):
        with pytest.raises(DomainError):
            check_companion(mpf(2), ctx)


@pytest.fixture(scope="module")
def ctx_mod():
    return PrecisionCtx(300)


class TestOrder25:
    @pytest.mark.parametrize("n", [130, 190, 240])
    def test_certified(self, ctx_mod, n):
        alpha, beta = order25_sources(n)
        assert check_order25(alpha, beta, ctx_mod).verdict == CERTIFIED

    def test_swapped_orientation(self, ctx_mod):
        alpha, beta = order25_sources(130)
        assert check_order25(beta, alpha, ctx_mod).verdict == check_order25(alpha, beta, ctx_mod).verdict

    @pytest.mark.parametrize("eps_exp", [10, 30])
    def test_perturbed_refuted(self, ctx_mod, eps_exp):
        alpha, beta = order25_sources(190)
        bumped = lambda c: alpha(c) * (1 + mpf(10) ** -eps_exp)
        assert check_order25(bumped, beta, ctx_mod).verdict != CERTIFIED

    def test_domain(self, ctx):
        with pytest.raises(DomainError):
            check_order25(mpf(0), mpf("0.1"), ctx)
        with pytest.raises(DomainError):
            check_order25(mpf("0.7"), mpf("0.1"), ctx)


class TestIcosahedral:
    @staticmethod
    def _lam(c):
        # lambda(i sqrt(13/10)) = lambda*(13/10)^2, reached from lambda*(26/5) via the quarter argument
        with c.working():
            return inv.lambda_star_quarter(inv.lambda_star(SurdArg(26, 5), c), c).value ** 2

    def test_product_r(self, ctx_mod):
        rval = lambda c: eval_R_product(SurdArg(26, 5), c).value
        cert = check_icosahedral(rval, self._lam, ctx_mod)
        assert cert.verdict == CERTIFIED
        assert {"lhs", "rhs"} <= set(cert.artifacts[0])

    def test_a_value_r(self, ctx_mod):
        from rrcf.catalog import A_VALUES
        from rrcf.radicals import parse

        a = parse(A_VALUES["thm2_26_5"])

        def rval(c):
            with c.working():
                av = a.evaluate()
                return mp.root(mp.sqrt(av**2 + 1) - av, 5)

        assert check_icosahedral(rval, self._lam, ctx_mod).verdict == CERTIFIED

    def test_perturbed(self, ctx_mod):
        rval = lambda c: eval_R_product(SurdArg(26, 5), c).value * (1 + mpf(10) ** -10)
        assert check_icosahedral(rval, self._lam, ctx_mod).verdict == REFUTED

    def test_singular_lambda(self, ctx):
        with pytest.raises(SingularityError):
            check_icosahedral(mpf("0.5"), mpf(1), ctx)


class TestYiMap:
    def test_a_zero(self):
        # s = -11 / (5 sqrt 5) gives a = 0 and R^5 = 1
        ctx = PrecisionCtx(100)
        s = lambda c: mpf(-11) / (5 * mp.sqrt(5))
        with ctx.working():
            assert abs(yi_map(s, ctx).value - 1) < mpf(10) ** -95

    def test_output_in_unit_interval(self):
        rng = random.Random(5)
        for _ in range(20):
            v = yi_map(mpf(rng.uniform(0, 1000)), PrecisionCtx(60, 20)).value
            assert 0 < v < 1


class TestTheorems:
    @pytest.mark.parametrize("tid", THEOREM_IDS)
    def test_bundle(self, ctx_mod, tid):
        b = reproduce_theorem(tid, ctx_mod)
        expected = SUPPORTED if tid == "conj_16_15" else CERTIFIED
        assert b.verdict == expected, b.failing_stage
        assert b.failing_stage is None
        assert json.loads(json.dumps(b.to_json()))["verdict"] == expected

    def test_conjecture_has_no_order25_stage(self, ctx_mod):
        b = reproduce_theorem("conj_16_15", ctx_mod)
        assert not any("order25" in c.claim_id for c in b.certificates)

    def test_unknown_id(self, ctx):
        with pytest.raises(KeyError):
            reproduce_theorem("thm9", ctx)

    def test_failing_stage_named(self, ctx_mod, monkeypatch):
        from rrcf.verify import theorems

        monkeypatch.setitem(theorems.A_VALUES, "thm2_26_5", "208818 - 93240*sqrt(5) - 57825*sqrt(13) + 25901*sqrt(65)")
        b = reproduce_theorem("thm2_26_5", ctx_mod)
        assert b.verdict == REFUTED
        assert b.failing_stage == "thm2_26_5/icosahedral"
