"""JSON link documents: the on-disk interchange format for three-component links.

A document carries exactly three components, each either as uniformly spaced
``samples`` (4-vectors on S^3 or 3-vectors to be lifted stereographically)
or as explicit trigonometric ``coeffs``, plus a traversal ``orientation``.
Floats are serialized with shortest round-trip repr, so dump -> parse is
exact.
"""

import json

import numpy as np

from .errors import LinkDocumentError
from .geometry import CurveS3, Link3, from_samples

FORMAT = "linkhel-link/1"


def _require(cond, message, field):
    if not cond:
        raise LinkDocumentError(message, field=field)


def _parse_component(comp, idx):
    where = f"components[{idx}]"
    _require(isinstance(comp, dict), "expected an object", where)
    space = comp.get("space", "S3")
    _require(space in ("S3", "R3"), f"space must be 'S3' or 'R3', got {space!r}", where)
    orientation = comp.get("orientation", 1)
    _require(orientation in (1, -1), f"orientation must be 1 or -1, got {orientation!r}", where)
    has_samples = "samples" in comp
    has_coeffs = "coeffs" in comp
    _require(
        has_samples != has_coeffs,
        "exactly one of 'samples' or 'coeffs' is required",
        where,
    )
    if has_samples:
        samples = comp["samples"]
        _require(isinstance(samples, list) and len(samples) >= 8,
                 "samples must be a list of at least 8 points", f"{where}.samples")
        width = 4 if space == "S3" else 3
        for j, row in enumerate(samples):
            _require(
                isinstance(row, list)
                and len(row) == width
                and all(isinstance(v, (int, float)) for v in row),
                f"expected {width} numbers", f"{where}.samples[{j}]",
            )
        return from_samples(np.array(samples, dtype=float), orientation=orientation)

    _require(space == "S3", "coefficient input must use space 'S3'", where)
    coeffs = comp["coeffs"]
    _require(isinstance(coeffs, dict), "expected an object", f"{where}.coeffs")
    for key in ("wavenumbers", "real", "imag"):
        _require(key in coeffs, f"missing '{key}'", f"{where}.coeffs")
    k = np.asarray(coeffs["wavenumbers"], dtype=int)
    re = np.asarray(coeffs["real"], dtype=float)
    im = np.asarray(coeffs["imag"], dtype=float)
    _require(
        re.ndim == 2 and re.shape[1] == 4 and re.shape == im.shape
        and re.shape[0] == k.shape[0],
        "real/imag must be (n_modes, 4) arrays matching wavenumbers",
        f"{where}.coeffs",
    )
    curve = CurveS3(coeffs=re + 1j * im, wavenumbers=k, orientation=orientation)
    defect = curve.max_norm_defect()
    _require(defect <= 1e-6, f"curve leaves the unit sphere by {defect:.2e}", where)
    return curve


def parse_document(doc):
    """Build a Link3 from a parsed JSON document, with field diagnostics."""
    _require(isinstance(doc, dict), "document must be a JSON object", None)
    fmt = doc.get("format")
    _require(fmt == FORMAT, f"unsupported format {fmt!r} (expected {FORMAT!r})", "format")
    comps = doc.get("components")
    _require(isinstance(comps, list) and len(comps) == 3,
             "exactly three components are required", "components")
    curves = [_parse_component(c, i) for i, c in enumerate(comps)]
    return Link3(*curves)


def load_link(path):
    """Read and parse a link document from a JSON file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise LinkDocumentError(str(exc), field=str(path)) from exc
    except json.JSONDecodeError as exc:
        raise LinkDocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            field=str(path),
        ) from exc
    return parse_document(doc)


def entry_to_document(entry):
    """Serialize a catalog entry as a link document (construction samples)."""
    return {
        "format": FORMAT,
        "name": entry.name,
        "components": [
            {
                "space": "S3",
                "orientation": o,
                "samples": [[float(v) for v in row] for row in pts],
            }
            for pts, o in zip(entry.samples, entry.orientations)
        ],
    }


def dumps(doc):
    """Deterministic JSON text for a document."""
    return json.dumps(doc, indent=2, sort_keys=True)
