import json
import math

import numpy as np
import pytest

from triuncert.algebra import PAULI_TRIPLE, ObservableTriple
from triuncert.cli import main
from triuncert.cli.io import (
    dumps,
    load_floor,
    load_state,
    load_triple,
    state_document,
    triple_document,
)
from triuncert.config import SEED_ENV_VAR
from triuncert.errors import DocumentError
from triuncert.matrix import QuantumState, basis_state


@pytest.fixture
def pauli_file(tmp_path):
    path = tmp_path / "pauli.json"
    path.write_text(dumps(triple_document(PAULI_TRIPLE)))
    return path


@pytest.fixture
def singlet_file(tmp_path, singlet):
    path = tmp_path / "singlet.json"
    path.write_text(dumps(state_document(singlet)))
    return path


@pytest.fixture
def product_file(tmp_path):
    path = tmp_path / "product.json"
    path.write_text(dumps(state_document(basis_state(4, 0))))
    return path


def _read(path):
    return json.loads(path.read_text())


def test_main__example_exits_zero(tmp_path):
    out = tmp_path / "example.json"

    assert main(["example", "--out", str(out)]) == 0
    document = _read(out)
    assert document["failures"] == 0
    assert document["verdicts"]["singlet"] == "Entangled"


def test_main__example_is_reproducible(tmp_path):
    out = tmp_path / "example.json"
    main(["example", "--out", str(out)])
    a = _read(out)
    main(["example", "--out", str(out)])
    b = _read(out)

    a.pop("wall_time")
    b.pop("wall_time")
    assert a == b


def test_main__verify_writes_json_report(tmp_path):
    out = tmp_path / "verify.json"

    assert main(["verify", "--dim", "3", "--trials", "25", "--seed", "7", "--out", str(out)]) == 0
    document = _read(out)
    assert document["seed"] == 7
    assert document["trials"] == 100
    assert document["failures"] == 0


def test_main__verify_csv_rows(tmp_path):
    out = tmp_path / "rows.csv"

    assert main(
        ["verify", "--dim", "2", "--trials", "3", "--suite", "rsq", "--format", "csv", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "suite,trial,seed,value,passed"
    assert len(lines) == 4
    assert all(line.startswith("rsq,") for line in lines[1:])


def test_main__verify_zero_trials(tmp_path):
    out = tmp_path / "empty.json"

    assert main(["verify", "--dim", "2", "--trials", "0", "--out", str(out)]) == 0
    assert _read(out)["trials"] == 0


def test_main__verify_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(SEED_ENV_VAR, "5")
    out = tmp_path / "env.json"

    assert main(["verify", "--dim", "2", "--trials", "1", "--suite", "rsq", "--out", str(out)]) == 0
    assert _read(out)["seed"] == 5


def test_main__verify_bad_environment_seed_is_input_error(monkeypatch):
    monkeypatch.setenv(SEED_ENV_VAR, "not-a-seed")

    assert main(["verify", "--dim", "2", "--trials", "1"]) == 2


def test_main__verify_rejects_dimension_one():
    assert main(["verify", "--dim", "1", "--trials", "5"]) == 2


def test_main__unknown_flag_is_input_error():
    assert main(["verify", "--dim", "2", "--trials", "1", "--bogus"]) == 2


def test_main__witness_singlet_is_entangled(tmp_path, pauli_file, singlet_file):
    out = tmp_path / "report.json"

    code = main(["witness", "--triple", str(pauli_file), "--state", str(singlet_file), "--out", str(out)])

    assert code == 3
    document = _read(out)
    assert document["verdict"] == "Entangled"
    assert document["expectation_abs"] == pytest.approx(3.0)


def test_main__witness_product_is_inconclusive(tmp_path, pauli_file, product_file):
    out = tmp_path / "report.json"

    assert main(["witness", "--triple", str(pauli_file), "--state", str(product_file), "--out", str(out)]) == 0
    assert _read(out)["verdict"] == "Inconclusive"


def test_main__witness_rejects_non_hermitian_triple(tmp_path, singlet_file):
    path = tmp_path / "bad.json"
    document = triple_document(PAULI_TRIPLE)
    document["entries"][0][0][1] = [5.0, 0.0]
    path.write_text(json.dumps(document))

    assert main(["witness", "--triple", str(path), "--state", str(singlet_file)]) == 2


def test_main__witness_reports_malformed_json_location(tmp_path, singlet_file, caplog):
    path = tmp_path / "broken.json"
    path.write_text('{"kind": "triple",\n "dim": 2,\n "entries": [}\n')

    assert main(["witness", "--triple", str(path), "--state", str(singlet_file)]) == 2
    assert "line 3" in caplog.text


def test_main__witness_variance_requires_floor(pauli_file, singlet_file):
    code = main(["witness", "--triple", str(pauli_file), "--state", str(singlet_file), "--method", "variance"])

    assert code == 2


def test_main__floor_then_variance_witness(tmp_path, pauli_file, singlet_file):
    floor_path = tmp_path / "floor.json"
    report_path = tmp_path / "report.json"

    assert main(["floor", "--triple", str(pauli_file), "--restarts", "8", "--seed", "2", "--out", str(floor_path)]) == 0
    floor = load_floor(floor_path)
    assert floor.c <= 1e-6
    assert floor.fingerprint == PAULI_TRIPLE.fingerprint()

    code = main(
        [
            "witness",
            "--triple", str(pauli_file),
            "--state", str(singlet_file),
            "--method", "variance",
            "--floor", str(floor_path),
            "--out", str(report_path),
        ]
    )
    assert code == 0
    assert _read(report_path)["method"] == "VarianceFloor"


def test_main__floor_grid_check_on_qubits(tmp_path, weighted_pauli_triple):
    triple_path = tmp_path / "weighted.json"
    floor_path = tmp_path / "floor.json"
    triple_path.write_text(dumps(triple_document(weighted_pauli_triple)))

    assert main(["floor", "--triple", str(triple_path), "--restarts", "8", "--grid-check", "--out", str(floor_path)]) == 0
    document = _read(floor_path)
    assert document["c"] == pytest.approx(1.0, abs=1e-6)
    assert document["grid_value"] == pytest.approx(1.0, abs=1e-6)


def test_main__floor_grid_check_rejects_qutrits(tmp_path):
    path = tmp_path / "qutrit.json"
    triple = ObservableTriple.from_matrices([np.eye(3), np.diag([1.0, 0.0, -1.0]), np.eye(3)])
    path.write_text(dumps(triple_document(triple)))

    assert main(["floor", "--triple", str(path), "--grid-check"]) == 2


def test_io__documents_read_back_bit_exact(tmp_path):
    state = QuantumState.pure([1.0, 1j / 3, math.pi], normalize=True)
    state_path = tmp_path / "state.json"
    triple_path = tmp_path / "triple.json"
    state_path.write_text(dumps(state_document(state)))
    triple_path.write_text(dumps(triple_document(PAULI_TRIPLE)))

    assert np.array_equal(load_state(state_path).vector, state.vector)
    assert load_triple(triple_path).fingerprint() == PAULI_TRIPLE.fingerprint()


def test_io__missing_field_names_location(tmp_path):
    path = tmp_path / "state.json"
    path.write_text(json.dumps({"kind": "pure", "entries": [[1.0, 0.0]]}))

    with pytest.raises(DocumentError) as ex:
        load_state(path)

    assert ex.value.location == "dim"


def test_io__density_document(tmp_path):
    path = tmp_path / "rho.json"
    path.write_text(
        json.dumps({"kind": "density", "dim": 2, "entries": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]})
    )

    state = load_state(path)

    assert not state.is_pure
    assert np.allclose(state.density_matrix(), np.eye(2) / 2)


@pytest.fixture
def pauli_floor_document(tmp_path, pauli_file):
    path = tmp_path / "floor.json"
    main(["floor", "--triple", str(pauli_file), "--restarts", "4", "--seed", "1", "--out", str(path)])
    return _read(path)


def _witness_with_floor(tmp_path, pauli_file, product_file, floor_document):
    path = tmp_path / "edited_floor.json"
    path.write_text(json.dumps(floor_document))
    return main(
        [
            "witness",
            "--triple", str(pauli_file),
            "--state", str(product_file),
            "--method", "variance",
            "--floor", str(path),
        ]
    )


@pytest.mark.parametrize("c", [math.inf, math.nan, 5.0, 10**400])
def test_main__witness_rejects_floor_value_not_at_argmin(
    tmp_path, pauli_file, product_file, pauli_floor_document, c
):
    pauli_floor_document["c"] = c

    assert _witness_with_floor(tmp_path, pauli_file, product_file, pauli_floor_document) == 2


@pytest.mark.parametrize(
    "field, value",
    [
        ("restarts", "many"),
        ("restarts", None),
        ("converged", "yes"),
        ("multistart_value", "low"),
        ("grid_value", [1.0]),
    ],
)
def test_main__witness_rejects_mistyped_floor_fields(
    tmp_path, pauli_file, product_file, pauli_floor_document, field, value
):
    pauli_floor_document[field] = value

    assert _witness_with_floor(tmp_path, pauli_file, product_file, pauli_floor_document) == 2


def test_main__witness_untouched_floor_is_inconclusive_on_product(
    tmp_path, pauli_file, product_file, pauli_floor_document
):
    assert _witness_with_floor(tmp_path, pauli_file, product_file, pauli_floor_document) == 0


def test_main__witness_rejects_non_utf8_state(tmp_path, pauli_file, caplog):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff\xfe{}")

    assert main(["witness", "--triple", str(pauli_file), "--state", str(path)]) == 2
    assert "UTF-8" in caplog.text


def test_io__oversized_integer_entry_is_document_error(tmp_path):
    path = tmp_path / "huge.json"
    path.write_text('{"kind": "pure", "dim": 1, "entries": [[' + str(10**400) + ", 0]]}")

    with pytest.raises(DocumentError) as ex:
        load_state(path)

    assert ex.value.location == "entries[0]"
