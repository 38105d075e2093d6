import numpy as np
import pytest

from atom_ferris_wheel.common.errors import FieldFormatError
from atom_ferris_wheel.common.field_io import FieldFileHeader, header_lines, read_field, write_field
from atom_ferris_wheel.common.grid import ComplexField2D, GridSpec

SPEC = GridSpec(nx=16, ny=32, half_extent_x=1e-4, half_extent_y=2e-4)


@pytest.fixture
def complex_field():
    rng = np.random.default_rng(7)
    values = rng.normal(size=(32, 16)) + 1j * rng.normal(size=(32, 16))
    return ComplexField2D(
        SPEC,
        values * 1e3,
        quantity="order_1",
        units="1/m",
        params={"m": 1, "tau": 0.1 / 3.2798e7, "mode": "ideal"},
    )


def test_complex_field_survives_a_round_trip(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "order.csv")
    back = read_field(path)
    np.testing.assert_array_equal(back.values, complex_field.values)
    assert back.spec == SPEC
    assert back.quantity == "order_1"
    assert back.units == "1/m"
    assert back.params == complex_field.params


def test_real_field_layout(tmp_path):
    values = np.arange(32 * 16, dtype=np.float64).reshape(32, 16)
    path = write_field(ComplexField2D(SPEC, values, quantity="ferris_density", units="1/m^2"), tmp_path / "d.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "# schema_version=1"
    assert "# dtype=real" in lines
    first_row = lines[8].split(",")
    assert len(first_row) == 3
    assert float(first_row[0]) == pytest.approx(-1e-4)
    assert float(first_row[1]) == pytest.approx(-2e-4)
    back = read_field(path)
    assert back.is_real
    np.testing.assert_array_equal(back.values, values)


def test_header_lists_params_sorted(complex_field):
    lines = header_lines(complex_field)
    assert lines[:3] == ["schema_version=1", "nx=16", "ny=32"]
    assert [line for line in lines if line.startswith("param.")] == [
        "param.m=int:1",
        "param.mode=str:ideal",
        f"param.tau=float:{0.1 / 3.2798e7!r}",
    ]



def test_params_keep_their_types(tmp_path):
    params = {
        "label": "12",
        "limit": "inf",
        "flag": True,
        "apodized": False,
        "m": np.int64(-2),
        "z": np.float64(0.05),
        "saturation": None,
        "empty": "",
    }
    F = ComplexField2D(SPEC, np.ones((32, 16)), quantity="mask_intensity", units="W/m^2", params=params)
    back = read_field(write_field(F, tmp_path / "typed.csv")).params
    assert back == {**params, "m": -2, "z": 0.05}
    assert [type(back[key]) for key in ("label", "limit", "flag", "m", "z")] == [str, str, bool, int, float]
    assert back["saturation"] is None


@pytest.mark.parametrize("raw", ["param.m=1", "param.m=complex:1j", "param.flag=bool:yes", "param.m=int:one"])
def test_untyped_param_is_a_format_error(complex_field, tmp_path, raw):
    path = write_field(complex_field, tmp_path / "order.csv")
    _rewrite(path, lambda lines: lines.__setitem__(lines.index("# param.m=int:1"), f"# {raw}"))
    with pytest.raises(FieldFormatError):
        read_field(path)


def _rewrite(path, edit):
    lines = path.read_text().splitlines()
    edit(lines)
    path.write_text("\n".join(lines) + "\n")
    return path


def test_missing_header_key(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "f.csv")
    _rewrite(path, lambda lines: lines.pop(7))
    with pytest.raises(FieldFormatError, match="dtype"):
        read_field(path)


def test_wrong_row_count(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "f.csv")
    _rewrite(path, lambda lines: lines.pop())
    with pytest.raises(FieldFormatError, match="expected 512 data rows"):
        read_field(path)


def test_bad_row_reports_its_line(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "f.csv")
    n_header = sum(1 for line in path.read_text().splitlines() if line.startswith("#"))

    def corrupt(lines):
        lines[n_header + 4] = lines[n_header + 4].rsplit(",", 1)[0]

    _rewrite(path, corrupt)
    with pytest.raises(FieldFormatError) as info:
        read_field(path)
    assert info.value.line == n_header + 5
    assert "columns" in str(info.value)


def test_unparsable_number(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "f.csv")

    def corrupt(lines):
        lines[-1] = lines[-1].replace(lines[-1].split(",")[2], "abc", 1)

    _rewrite(path, corrupt)
    with pytest.raises(FieldFormatError):
        read_field(path)


def test_coordinates_must_match_header(complex_field, tmp_path):
    path = write_field(complex_field, tmp_path / "f.csv")
    _rewrite(path, lambda lines: lines.__setitem__(-1, "0.5,0.5,1,1"))
    with pytest.raises(FieldFormatError, match="coordinates"):
        read_field(path)


@pytest.mark.parametrize(
    "old, new",
    [("# dtype=complex", "# dtype=quaternion"), ("# schema_version=1", "# schema_version=2"), ("# nx=16", "# nx=15")],
)
def test_invalid_header_values(complex_field, tmp_path, old, new):
    path = write_field(complex_field, tmp_path / "f.csv")
    path.write_text(path.read_text().replace(old, new, 1))
    with pytest.raises(FieldFormatError):
        read_field(path)


def test_header_record_describes_the_payload(complex_field):
    header = FieldFileHeader.from_field(complex_field)
    assert header.dtype == "complex"
    assert header.n_columns == 4
    assert header.grid_spec() == complex_field.spec
    assert header.lines() == header_lines(complex_field)
