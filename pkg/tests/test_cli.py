import json
import subprocess
import sys

import pytest
from mpmath import mp

from rrcf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_R_first_letter(self, capsys):
        code, out, _ = run(capsys, "eval", "R", "4/1", "--digits", "200")
        assert code == 0
        with mp.workdps(170):
            expected = mp.sqrt((5 + mp.sqrt(5)) / 2) - (mp.sqrt(5) + 1) / 2
            assert out.strip()[:140] == mp.nstr(expected, 150)[:140]

    def test_shows_digits_minus_guard(self, capsys):
        _, out, _ = run(capsys, "eval", "lambda-star", "1/1", "--digits", "80", "--guard", "30")
        assert out.strip().startswith("0.70710678") and len(out.strip()) == 52

    def test_json(self, capsys):
        code, out, _ = run(capsys, "eval", "g", "130", "--json", "--digits", "60")
        data = json.loads(out)
        assert code == 0 and data["fn"] == "g" and data["arg"] == "130/1" and data["digits"] == 60
        assert json.dumps(json.loads(out), sort_keys=True) == out.strip()

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "v.txt"
        run(capsys, "eval", "G", "1", "--digits", "60", "--out", str(path))
        assert path.read_text().startswith("1.0")


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [["eval", "R", "0/1"], ["eval", "nope", "1"], ["frob"], ["eval", "R", "4", "--digits", "10"],
         ["verify", "order25"], ["recognize", "--literal", "abc"], ["recognize"]],
    )
    def test_usage(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            code = main(argv)
            raise SystemExit(code)
        assert exc.value.code == 3

    def test_domain(self, capsys):
        code, out, _ = run(capsys, "verify", "order25", "--alpha", "0.7", "--beta", "0.2", "--json")
        assert code == 4 and json.loads(out)["exit_code"] == 4

    def test_refuted(self, capsys):
        code, _, _ = run(capsys, "verify", "order25", "--alpha", "0.1", "--beta", "0.2")
        assert code == 1

    def test_inconclusive(self, capsys):
        # q so close to 1 that the Rogers product needs more factors than the cap allows
        code, _, _ = run(capsys, "verify", "identities", "--q", "0.9999999999999", "--digits", "60", "--guard", "20")
        assert code == 2


class TestRecognize:
    def test_literal_one(self, capsys):
        code, out, _ = run(capsys, "recognize", "--literal", "1.0", "--degree", "4")
        assert code == 0 and out.startswith("x - 1")

    def test_eval_lambda_star(self, capsys):
        code, out, _ = run(capsys, "recognize", "--eval", "lambda-star", "26/5", "--degree", "8", "--json")
        cand = json.loads(out)["candidate"]
        assert cand["coeffs"] == [1, -14999688, 140280340, -14999688, -280560666, 14999688, 140280340, 14999688, 1]
        assert cand["root_index"] == 6 and cand["confidence"] == "escalation-stable"

    def test_none_exits_zero(self, capsys):
        code, out, _ = run(capsys, "recognize", "--eval", "R", "1", "--degree", "2", "--json")
        assert code == 0 and json.loads(out)["verdict"] == "none"

    def test_yi(self, capsys):
        code, out, _ = run(capsys, "recognize", "--yi", "13/2", "--digits", "500")
        assert code == 0
        assert "-37296 + 16705*sqrt(5) + 2*sqrt(65*(10716449 - 4792536*sqrt(5)))" in out

    def test_basis(self, capsys):
        code, out, _ = run(capsys, "recognize", "--literal", "2.2360679774997896964091736687312762354406183596115257242708972454105209256378048994144144083787822749695081761507737835042532677244470738635863601215334527088667781731918791658112766453226398565805357613504175337850034233924140644420589395",
                           "--basis", "1,5", "--digits", "200", "--guard", "20")
        assert code == 0 and out.strip() == "sqrt(5)"

    def test_file_too_short(self, capsys, tmp_path):
        path = tmp_path / "x.txt"
        path.write_text("1.41421356237")
        code, _, err = run(capsys, "recognize", "--file", str(path), "--degree", "2")
        assert code == 3 and "digits" in err


class TestVerifyAndReproduce:
    def test_identities_jsonl(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        code, _, _ = run(capsys, "verify", "identities", "--count", "2", "--seed", "1", "--digits", "100", "--out", str(path))
        lines = path.read_text().splitlines()
        assert code == 0 and len(lines) == 4
        assert all(json.loads(line)["verdict"] == "certified" for line in lines)

    def test_icosahedral_with_a(self, capsys):
        code, _, _ = run(capsys, "verify", "icosahedral", "26/5", "--a",
                         "208818 - 93240*sqrt(5) - 57825*sqrt(13) + 25900*sqrt(65)")
        assert code == 0

    def test_reproduce_conjecture(self, capsys):
        code, out, _ = run(capsys, "reproduce", "conj_16_15", "--json", "--digits", "200")
        assert code == 0 and json.loads(out)["verdict"] == "numerically-supported"

    def test_reproduce_deterministic(self, capsys):
        def strip(o):
            data = json.loads(o)
            for c in data["certificates"]:
                c.pop("wall_time_ms")
            return data

        _, a, _ = run(capsys, "reproduce", "thm2_26_5", "--json", "--digits", "150")
        _, b, _ = run(capsys, "reproduce", "thm2_26_5", "--json", "--digits", "150")
        assert strip(a) == strip(b)


class TestSearch:
    def test_resumable(self, capsys, tmp_path):
        path = tmp_path / "s.jsonl"
        run(capsys, "search", "--num", "26", "--den", "5", "--digits", "400", "--out", str(path))
        run(capsys, "search", "--num", "25-26", "--den", "5", "--digits", "400", "--out", str(path))
        recs = [json.loads(line) for line in path.read_text().splitlines()]
        assert [r["key"] for r in recs] == ["26/5", "25/5"]
        assert recs[0]["form"] == "208818 - 93240*sqrt(5) - 57825*sqrt(13) + 25900*sqrt(65)"

    def test_parallel_conjecture_flagged(self, capsys, tmp_path):
        path = tmp_path / "p.jsonl"
        code, _, _ = run(capsys, "search", "--num", "16-17", "--den", "15", "--digits", "400", "--jobs", "2",
                         "--out", str(path))
        recs = {json.loads(line)["key"]: json.loads(line) for line in path.read_text().splitlines()}
        assert code == 0 and set(recs) == {"16/15", "17/15"}
        assert recs["16/15"]["verdict"] == "numerically-supported"
        assert recs["16/15"]["matches"] == "conj_16_15"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rrcf", "eval", "f", "1", "--digits", "60"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("0.")


def test_catalog_check(capsys):
    code, out, _ = run(capsys, "catalog", "--check", "--digits", "100")
    assert code == 0 and "R5_16_15" in out and "numerically-supported" in out
