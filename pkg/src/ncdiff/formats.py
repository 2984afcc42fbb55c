"""JSON codecs for algebra definitions and forms.

Algebra file schema: {"m": int, "label": str, "basis": [Matrix, ...],
"alpha": [Column, ...] (optional)} where Matrix = {"re": [[...]],
"im": [[...]]} row-major and Column = {"re": [...], "im": [...]} of length
n^2 in the row-major pair order (a, b) -> n*a + b.
"""

import json

import numpy as np

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "load_algebra",
    "save_algebra",
    "form_to_json",
]


def matrix_to_json(mat):
    mat = np.asarray(mat, dtype=complex)
    return {"re": mat.real.tolist(), "im": mat.imag.tolist()}


def matrix_from_json(obj):
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError("re and im parts have different shapes")
    return re + 1j * im


def load_algebra(path):
    """Read an algebra definition file; returns (m, label, basis, alpha)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    m = int(data["m"])
    label = data.get("label", "")
    basis = [matrix_from_json(b) for b in data["basis"]]
    alpha = None
    if data.get("alpha") is not None:
        cols = [matrix_from_json(c) for c in data["alpha"]]
        alpha = np.column_stack(cols)
    return m, label, basis, alpha


def save_algebra(path, m, label, basis, alpha=None):
    data = {
        "m": int(m),
        "label": label,
        "basis": [matrix_to_json(b) for b in basis],
    }
    if alpha is not None:
        alpha = np.asarray(alpha, dtype=complex)
        data["alpha"] = [matrix_to_json(alpha[:, r]) for r in range(alpha.shape[1])]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def form_to_json(form, threshold=0.0):
    """Serialize a form, keeping only nonzero coefficient entries."""
    n = form.tower.n
    p = form.degree
    entries = []
    if p == 0:
        if np.linalg.norm(form.coeffs) > threshold:
            entries.append({"index": [], "matrix": matrix_to_json(form.coeffs)})
    else:
        flat = form.coeffs.reshape((n ** p,) + form.coeffs.shape[-2:])
        for k in range(n ** p):
            if np.linalg.norm(flat[k]) > threshold:
                idx = list(np.unravel_index(k, (n,) * p))
                entries.append(
                    {"index": [int(i) for i in idx], "matrix": matrix_to_json(flat[k])}
                )
    return {"degree": p, "coefficients": entries}
