import pytest

import sumset_forge as sf


def test_field_info():
    f = sf.Field.parse("3^2")
    assert (f.p, f.k, f.q) == (3, 2, 9)
    assert f.mul(f.inv(5), 5) == 1


def test_bad_field():
    with pytest.raises(ValueError):
        sf.Field.parse("6")


def test_set_ops():
    f = sf.Field.parse("7")
    a = sf.ESet(f, [1, 2, 4])
    assert sf.sumset(a, a).elements() == [1, 2, 3, 4, 5, 6]
    assert sf.productset(a, a).elements() == [1, 2, 4]
    assert sf.is_subfield(sf.ESet.full(f))
    assert sf.ESet.from_mask_hex(f, a.mask_hex()) == a


def test_ruzsa_forms():
    f = sf.Field.parse("7")
    x = sf.ESet(f, [0, 1, 3])
    y = sf.ESet(f, [0])
    assert not sf.check_ruzsa_triangle(x, y, x)["holds"]
    assert sf.check_ruzsa_sum_form(x, y, x)["holds"]


def test_certificate_round_trip():
    f = sf.Field.parse("2^8")
    a = sf.ESet(f, [78, 87, 115])
    cert = sf.run_main_theorem(a)
    assert cert["case"] == "SumCase"
    assert cert["verified"] and cert["holds"]
    assert sf.verify_certificate_text(a, cert["text"])
    assert not sf.verify_certificate_text(a, cert["text"].replace("CASE", "CAZE"))


def test_search_and_suite():
    f = sf.Field.parse("5")
    recs = sf.search(f, 3, include_zero=True)
    assert {r[0] for r in recs} >= {"07"}
    run = sf.run_suite("energy", f, 50, seed=1)
    assert run["instances"] == 50 and not run["failures"]
