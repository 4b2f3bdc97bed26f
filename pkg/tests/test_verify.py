from fractions import Fraction

import numpy as np
import pytest

from rankforge.errors import BudgetExceeded
from rankforge.expander import DimExpander
from rankforge.gf import make_field
from rankforge.seeded import lossless_collection, lossy, lossy_collection, strong
from rankforge.twosource import gabidulin_code, code_to_condenser, pruned_lossless
from rankforge.verify import (VerifyReport, verify, verify_seeded, verify_two_source,
                              witness_violates)


def test_report_json_uses_stable_keys():
    rep = verify(lossless_collection(make_field(5), 3, 2, 1))
    d = rep.to_dict()
    for key in ("property", "mode", "worst", "threshold", "pass", "witness"):
        assert key in d
    assert "passed" not in d
    assert rep.summary().startswith("PASS strong-lossless")


def test_exhaustive_reports_do_not_depend_on_shard_count():
    C = lossless_collection(make_field(7), 4, 2, 2)
    one = verify_seeded(C, jobs=1).to_dict()
    assert verify_seeded(C, jobs=3).to_dict() == one
    assert verify_seeded(C, jobs=1).to_dict() == one


def test_pair_reports_do_not_depend_on_shard_count():
    B = code_to_condenser(gabidulin_code(2, 3, 3, 1))
    assert verify_two_source(B, jobs=1).to_dict() == verify_two_source(B, jobs=2).to_dict()


def test_failing_witness_is_lowest_index_and_independent_of_shards():
    C = lossless_collection(make_field(7), 4, 2, 2).with_claim(strong(2, 0))
    a, b = verify_seeded(C, jobs=1), verify_seeded(C, jobs=4)
    assert not a.passed
    assert a.witness == b.witness
    assert witness_violates(C, a)


def test_sampled_mode_needs_seed_and_is_reproducible():
    C = lossy_collection(make_field(17), 5, 3, 2, Fraction(1, 2))
    with pytest.raises(ValueError):
        verify_seeded(C, "sampled")
    a = verify_seeded(C, "sampled", seed=3, trials=500)
    b = verify_seeded(C, "sampled", seed=3, trials=500)
    assert a.to_dict() == b.to_dict()
    assert a.seed == 3 and a.mode == "sampled" and a.checked == 1000 and a.passed


def test_sampled_two_source():
    B = pruned_lossless(make_field(7), 3, 3, 1, 1)
    rep = verify_two_source(B, "sampled", seed=1, trials=200)
    assert rep.passed and rep.checked == 200 and rep.seed == 1


def test_budget_is_enforced():
    C = lossy_collection(make_field(17), 5, 3, 2, Fraction(1, 2))
    with pytest.raises(BudgetExceeded):
        verify_seeded(C, budget=1000)
    with pytest.raises(BudgetExceeded):
        verify_two_source(pruned_lossless(make_field(7), 3, 3, 1, 1), budget=100)


def test_lossy_le_reports_every_dimension():
    C = lossy_collection(make_field(13), 4, 2, 2, Fraction(1, 2))
    rep = verify_seeded(C)
    assert [d["dim"] for d in rep.details] == [1, 2]
    assert [d["threshold"] for d in rep.details] == [1, 1]


def test_lossy_eq_only_checks_top_dimension():
    C = lossy_collection(make_field(13), 4, 2, 2, Fraction(1, 2))
    rep = verify_seeded(C.with_claim(lossy(2, Fraction(1, 2), "eq")))
    assert [d["dim"] for d in rep.details] == [2]


def test_expander_needs_a_dimension_to_check():
    F = make_field(2)
    with pytest.raises(ValueError):
        verify(DimExpander(F, 3, np.zeros((1, 3, 3)), Fraction(1, 4), 1))


def test_unknown_objects_and_modes_are_rejected():
    with pytest.raises(TypeError):
        verify(object())
    with pytest.raises(ValueError):
        verify(lossless_collection(make_field(5), 3, 2, 1), "fast")


def test_report_round_trips_through_json():
    import json
    rep = verify(lossless_collection(make_field(5), 3, 2, 1))
    back = json.loads(rep.to_json())
    back["passed"] = back.pop("pass")
    assert VerifyReport(**back) == rep
