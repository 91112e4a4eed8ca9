import numpy as np
import pytest

from nhscope.exceptions import IngestionError
from nhscope.models import build_nonreciprocal_ssh, load_hamiltonian, save_hamiltonian
from nhscope.models.io import parse_complex


def test_parse_complex_forms():
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-3.5i") == -3.5j
    assert parse_complex("0.25") == 0.25
    with pytest.raises(ValueError):
        parse_complex("1+2j")


def test_load_matrix_with_comments(tmp_path):
    path = tmp_path / "h.txt"
    path.write_text("# two-level EP\n\ndim 2\n0 0.5-0.1i\n1 0\n", encoding="utf-8")
    ham = load_hamiltonian(path)
    np.testing.assert_array_equal(ham.entries, [[0, 0.5 - 0.1j], [1, 0]])
    assert ham.labels == [(1, "-"), (2, "-")]


def test_saved_matrix_reloads_exactly(tmp_path):
    ham = build_nonreciprocal_ssh(0.3, 1.0, 0.1, 4)
    path = save_hamiltonian(ham, tmp_path / "ssh.txt")
    np.testing.assert_array_equal(load_hamiltonian(path).entries, ham.entries)


@pytest.mark.parametrize("text, line, fragment", [
    ("0 1\n1 0\n", 1, "dim"),
    ("dim 2\n0 1\n1\n", 3, "non-square"),
    ("dim 2\n0 x\n1 0\n", 2, "cannot parse"),
    ("dim 2\n0 nan\n1 0\n", 2, "non-finite"),
    ("dim 2\n0 1\n1 0\n2 2\n", 4, "non-square"),
])
def test_malformed_matrix_names_line(tmp_path, text, line, fragment):
    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(IngestionError) as info:
        load_hamiltonian(path)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(IngestionError):
        load_hamiltonian(tmp_path / "absent.txt")
