from fractions import Fraction

import pytest

from rankforge.expander import tensor_then_condense
from rankforge.fileio import FormatError, dumps, format_rational, loads, parse_rational, read_file, write_file
from rankforge.gf import make_field
from rankforge.linalg import FMatrix
from rankforge.seeded import design_from_condenser, lossless_collection, lossy_collection
from rankforge.smallfield import lift_condenser
from rankforge.twosource import gabidulin_code, pruned_lossless, roth_code


def _objects():
    F13 = make_field(13)
    lossy = lossy_collection(F13, 6, 3, 2, Fraction(1, 2))
    bil = pruned_lossless(make_field(7), 3, 3, 1, 1)
    return [
        FMatrix(make_field(3, 2), [[0, 1, 8], [4, 5, 2]]),
        lossless_collection(F13, 5, 3, 2),
        lossy,
        design_from_condenser(lossless_collection(F13, 5, 3, 2)),
        tensor_then_condense(lossy, 2, 0, r=1),
        gabidulin_code(2, 4, 4, 2),
        roth_code(make_field(5), 4, 4, 2),
        bil,
        bil.with_claim(1, 1, 0, le_r=True, le_s=True),
        lift_condenser(lossless_collection(make_field(2, 3), 5, 3, 2)),
    ]


@pytest.mark.parametrize("obj", _objects(), ids=lambda o: type(o).__name__)
def test_round_trip_is_bit_exact(obj, tmp_path):
    text = dumps(obj)
    back = loads(text)
    assert back == obj
    assert dumps(back) == text
    path = tmp_path / "obj.txt"
    write_file(str(path), obj)
    assert read_file(str(path)) == obj


def test_matrix_layout():
    M = FMatrix(make_field(2, 2), [[0, 3]])
    assert dumps(M) == "rankforge-matrix v1\nfield p=2 k=2 modulus=1,1,1\nrows=1 cols=2\n0,0 1,1\n"
    assert dumps(FMatrix(make_field(7), [[6]])).splitlines()[1] == "field p=7 k=1"


def test_lifted_collection_keeps_provenance_comment():
    text = dumps(lift_condenser(lossless_collection(make_field(2, 3), 5, 3, 2)))
    assert "# lifted-from p=2 k=3" in text.splitlines()


def test_comments_and_blank_lines_are_ignored():
    text = "# hello\nrankforge-matrix v1\n\nfield p=5 k=1\n# inner\nrows=1 cols=2\n1 4\n"
    assert loads(text) == FMatrix(make_field(5), [[1, 4]])


def test_rationals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("2") == 2
    assert format_rational(2) == "2/1"
    for bad in ("0.5", "1/0", "abc", ""):
        with pytest.raises(FormatError):
            parse_rational(bad)


MATRIX = "rankforge-matrix v1\nfield p=5 k=1\nrows=1 cols=2\n1 4\n"


@pytest.mark.parametrize("bad", [
    MATRIX.replace("v1", "v2"),
    MATRIX.replace("rows=1", "rows=2"),
    MATRIX.replace("1 4", "1 5"),
    MATRIX.replace("1 4", "1"),
    MATRIX.replace("p=5", "p=6"),
    MATRIX + "extra\n",
    "rankforge-matrix v1\nfield p=2 k=2 modulus=1,0,1\nrows=1 cols=1\n1,0\n",
    "rankforge-matrix v1\nfield p=2 k=2 modulus=1,1,1\nrows=1 cols=1\n1\n",
    "rankforge-collection v1\nfield p=5 k=1\nkind=lossy n=2 t=1 r=1 eps=0.5 mode=le count=0\n",
    "rankforge-collection v1\nfield p=5 k=1\nkind=strong n=2 t=1 r=1 L=1/1 count=1\n",
    "rankforge-widget v1\nfield p=5 k=1\n",
    "",
])
def test_malformed_files_are_rejected(bad):
    with pytest.raises((FormatError, ValueError)):
        loads(bad)
