"""Command-line interface: subcommands, exit codes, formats, schemas."""

import json
from importlib import resources

import jsonschema
import numpy as np
import pytest

from linkhel import catalog, linkdoc
from linkhel.cli import main
from linkhel.invariants import milnor_mu


def _schema(name):
    with resources.files("linkhel.schemas").joinpath(name).open() as fh:
        return json.load(fh)


@pytest.fixture(scope="module")
def unlink_doc_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "unlink.json"
    doc = linkdoc.entry_to_document(catalog.unlink())
    path.write_text(linkdoc.dumps(doc))
    return path


@pytest.fixture(scope="module")
def hopf_doc_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "hopf.json"
    doc = linkdoc.entry_to_document(catalog.hopf_pair_plus_unknot())
    path.write_text(linkdoc.dumps(doc))
    return path


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out.split()
    assert out == ["borromean", "hopf_pair_plus_unknot", "unlink"]


def test_catalog_dump_validates_and_parses(capsys):
    assert main(["catalog", "dump", "borromean"]) == 0
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, _schema("link_document.schema.json"))
    link = linkdoc.parse_document(doc)
    assert link.separation >= 0.1


def test_catalog_dump_unknown_name(capsys):
    assert main(["catalog", "dump", "granny"]) == 1
    assert "unknown catalog entry" in capsys.readouterr().err


def test_compute_roundtrip_is_bit_exact(unlink_doc_path, capsys):
    # dump -> parse -> compute reproduces the in-process report exactly
    assert main(["compute", str(unlink_doc_path), "--grid", "16", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, _schema("report.schema.json"))
    direct = milnor_mu(catalog.unlink().link, 16)
    assert payload["mu"] == direct.mu
    assert payload["nu"] == direct.nu
    assert payload["deg_residuals"] == [float(v) for v in direct.deg_residuals]
    assert (payload["p"], payload["q"], payload["r"]) == (0, 0, 0)


def test_compute_text_output(unlink_doc_path, capsys):
    assert main(["compute", str(unlink_doc_path), "--grid", "16"]) == 0
    out = capsys.readouterr().out
    assert "p, q, r:      0, 0, 0" in out
    assert "mu:" in out


def test_compute_check_convergence(unlink_doc_path, capsys):
    assert main([
        "compute", str(unlink_doc_path), "--grid", "32",
        "--check-convergence", "--json",
    ]) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, _schema("report.schema.json"))
    assert payload["convergence"]["n_half"] == 16
    assert payload["convergence"]["converged"] is True


def test_compute_gate_refusal(hopf_doc_path, capsys):
    assert main(["compute", str(hopf_doc_path), "--grid", "16"]) == 3
    assert "pairwise linking nonzero" in capsys.readouterr().out


def test_compute_gate_refusal_json(hopf_doc_path, capsys):
    assert main(["compute", str(hopf_doc_path), "--grid", "16", "--json"]) == 3
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, _schema("report.schema.json"))
    assert payload["error"]["code"] == "nonzero_linking"
    assert payload["error"]["r"] == -1
    assert payload["mu"] is None


def test_compute_parse_error_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "linkhel-link/1", "components": [}')
    assert main(["compute", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "line 1" in err

    wrong_field = tmp_path / "field.json"
    wrong_field.write_text(json.dumps({
        "format": "linkhel-link/1",
        "components": [{"space": "S3", "samples": [[1, 0, 0, 0]] * 8,
                        "orientation": 2}] * 3,
    }))
    assert main(["compute", str(wrong_field)]) == 1
    assert "components[0]" in capsys.readouterr().err


def test_compute_degenerate_input(tmp_path, capsys):
    # two components on (nearly) the same circle: separation failure, exit 2
    t = 2 * np.pi * np.arange(16) / 16
    circle = np.stack([np.cos(t), np.sin(t), 0 * t, 0 * t], axis=1)
    far = np.stack([0 * t, 0 * t, np.cos(t), np.sin(t)], axis=1)
    doc = {
        "format": "linkhel-link/1",
        "components": [
            {"space": "S3", "orientation": 1, "samples": circle.tolist()},
            {"space": "S3", "orientation": 1, "samples": circle.tolist()},
            {"space": "S3", "orientation": 1, "samples": far.tolist()},
        ],
    }
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(doc))
    assert main(["compute", str(path)]) == 2
    assert "approach within" in capsys.readouterr().err


def test_r3_samples_are_lifted(tmp_path):
    t = 2 * np.pi * np.arange(64) / 64
    def ring(cx, cy):
        return np.stack([cx + 0.3 * np.cos(t), cy + 0.3 * np.sin(t), 0 * t], axis=1)
    doc = {
        "format": "linkhel-link/1",
        "components": [
            {"space": "R3", "orientation": 1, "samples": ring(0, 0).tolist()},
            {"space": "R3", "orientation": 1, "samples": ring(2, 0).tolist()},
            {"space": "R3", "orientation": 1, "samples": ring(0, 2).tolist()},
        ],
    }
    path = tmp_path / "r3.json"
    path.write_text(json.dumps(doc))
    link = linkdoc.load_link(path)
    assert link.separation > 0.05


def test_coefficient_documents_parse():
    entry = catalog.unlink()
    curve = entry.link.X
    doc = {
        "format": "linkhel-link/1",
        "components": [
            {
                "space": "S3",
                "orientation": 1,
                "coeffs": {
                    "wavenumbers": [int(k) for k in c.wavenumbers],
                    "real": np.real(c.coeffs).tolist(),
                    "imag": np.imag(c.coeffs).tolist(),
                },
            }
            for c in entry.link.components()
        ],
    }
    link = linkdoc.parse_document(doc)
    s = np.linspace(0, 2 * np.pi, 33)
    assert np.allclose(link.X.eval(s), curve.eval(s), atol=1e-12)


def test_field_export(unlink_doc_path, tmp_path, capsys):
    out = tmp_path / "field.csv"
    assert main(["field", str(unlink_doc_path), "--grid", "8", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "s,t,u,vs,vt,vu"
    assert len(lines) == 1 + 512
    first_bytes = out.read_bytes()
    assert main(["field", str(unlink_doc_path), "--grid", "8", "--out", str(out)]) == 0
    assert out.read_bytes() == first_bytes


def test_phi_2d_table(tmp_path):
    out = tmp_path / "phi2.csv"
    assert main(["phi", "--dim", "2", "--grid", "32", "--truncation", "10",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,phi"
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    assert rows.shape == (32 * 32, 3)
    best = rows[np.argmax(rows[:, 2])]
    assert np.allclose(best[:2], [np.pi, np.pi])
    # symmetry under (x, y) -> (2pi - x, 2pi - y)
    table = {(round(r[0], 12), round(r[1], 12)): r[2] for r in rows}
    x = 2 * np.pi * 3 / 32
    y = 2 * np.pi * 7 / 32
    assert np.isclose(table[(round(x, 12), round(y, 12))],
                      table[(round(2 * np.pi - x, 12), round(2 * np.pi - y, 12))])


def test_phi_3d_center_value(tmp_path):
    out = tmp_path / "phi3.csv"
    assert main(["phi", "--dim", "3", "--grid", "16", "--truncation", "1",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,z,phi"
    assert len(lines) == 1 + 16**3
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    center = rows[np.all(np.isclose(rows[:, :3], np.pi), axis=1)]
    assert center.shape[0] == 1
    assert abs(center[0, 3] - 1.0 / (3 * np.pi**3)) <= 1e-12
