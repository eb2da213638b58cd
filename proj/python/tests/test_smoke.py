import json
import math

import pytest

import nfv


def test_field_info():
    info = nfv.field_info(1)
    assert (info["degree"], info["r1"], info["r2"], info["H"]) == (1, 1, 0, "1")
    gauss = nfv.field_info(-4, bits=64)
    assert math.isclose(float(gauss["H"]), math.pi / 4, rel_tol=1e-15)


def test_values():
    assert nfv.ideal_counts(-4, 10)[1:] == [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]
    assert float(nfv.divisor_sigma(1, 1, 6)) == 12.0
    z = nfv.dedekind_zeta(1, "2")
    assert z.re.startswith("1.6449340668482264364724151666460251892189499012067984377355")
    assert complex(nfv.dedekind_zeta(-4, (0.5, 3), bits=64)) != 0


def test_lambert_report():
    report = nfv.verify_lambert(-4, "0.25", 1, bits=128)
    assert report["identity"] == "lambert"
    assert float(report["rel_err"]) <= 1e-6
    lhs = nfv.lambert_lhs(-4, "0.25", 1, bits=128)
    assert lhs.re[:30] == report["lhs"]["re"][:30]


def test_errors():
    with pytest.raises(nfv.Error, match="SingularParameter"):
        nfv.verify_lambert(-4, 0, 1)
    with pytest.raises(nfv.Error, match="NotFundamental"):
        nfv.field_info(3)


def test_cli():
    code, out, err = nfv.run_cli(["field", "info", "--disc", "5"])
    assert code == 0 and json.loads(out)["discriminant"] == 5
    code, out, err = nfv.run_cli(["verify", "lambert", "--disc", "-4", "--a", "0", "--y", "1"])
    assert code == 2 and out == "" and "SingularParameter" in err
