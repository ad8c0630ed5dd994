"""Partial charges by iterative electronegativity equalisation (PEOE)."""

from __future__ import annotations

import warnings

from .mol import Hybridization, Molecule

# Electronegativity polynomial coefficients (a, b, c): chi = a + b q + c q^2,
# keyed by element and hybridisation.  Classic PEOE parameter set.
_PARAMS = {
    ("H", None): (7.17, 6.24, -0.56),
    ("C", Hybridization.SP3): (7.98, 9.18, 1.88),
    ("C", Hybridization.SP2): (8.79, 9.32, 1.51),
    ("C", Hybridization.SP): (10.39, 9.45, 0.73),
    ("N", Hybridization.SP3): (11.54, 10.82, 1.36),
    ("N", Hybridization.SP2): (12.87, 11.15, 0.85),
    ("N", Hybridization.SP): (15.68, 11.70, -0.27),
    ("O", Hybridization.SP3): (14.18, 12.92, 1.39),
    ("O", Hybridization.SP2): (17.07, 13.79, 0.47),
    ("F", None): (14.66, 13.85, 2.31),
    ("Cl", None): (11.00, 9.69, 1.35),
    ("Br", None): (10.08, 8.47, 1.16),
    ("I", None): (9.90, 7.96, 0.96),
    ("S", None): (10.14, 9.13, 1.38),
    ("P", None): (8.90, 8.24, 0.96),
}

_CHI_PLUS_H = 20.02
_ITERATIONS = 8


def _params(mol: Molecule, idx: int):
    atom = mol.atoms[idx]
    if atom.element == "H":
        return _PARAMS[("H", None)]
    by_hyb = _PARAMS.get((atom.element, atom.hybridization))
    if by_hyb is not None:
        return by_hyb
    for hyb in (Hybridization.SP3, Hybridization.SP2, Hybridization.SP, None):
        p = _PARAMS.get((atom.element, hyb))
        if p is not None:
            return p
    return None


def gasteiger_charges(mol: Molecule) -> tuple[list[float], list[float]]:
    """Assign atom.partial_charge; returns (heavy charges, per-hydrogen charges).

    Implicit/explicit hydrogen counts are treated as equivalent attached H
    atoms; the second list holds the charge of one such hydrogen per atom.
    Charges transfer only across bonds whose two ends are parameterised, so
    the total charge equals the total formal charge for covered molecules.
    Unparameterised atoms end at 0.0 with a warning.
    """
    n = mol.n_atoms
    params = [_params(mol, i) for i in range(n)]
    missing = sorted({mol.atoms[i].element for i in range(n) if params[i] is None})
    if missing:
        warnings.warn(
            f"no charge parameters for {', '.join(missing)}; leaving 0.0",
            stacklevel=2,
        )

    q = [float(mol.atoms[i].formal_charge) for i in range(n)]
    qh = [0.0] * n
    h_param = _PARAMS[("H", None)]

    def chi(p, charge):
        a, b, c = p
        return a + b * charge + c * charge * charge

    for k in range(1, _ITERATIONS + 1):
        damp = 0.5 ** k
        delta = [0.0] * n
        delta_h = [0.0] * n
        for bond in mol.bonds:
            i, j = bond.a, bond.b
            if params[i] is None or params[j] is None:
                continue
            ci = chi(params[i], q[i])
            cj = chi(params[j], q[j])
            if ci == cj:
                continue
            donor = i if ci < cj else j
            if mol.atoms[donor].element == "H":
                denom = _CHI_PLUS_H
            else:
                denom = sum(params[donor])
            t = abs(cj - ci) / denom * damp
            if ci < cj:
                delta[i] += t
                delta[j] -= t
            else:
                delta[j] += t
                delta[i] -= t
        for i in range(n):
            hcount = mol.atoms[i].total_h
            if hcount == 0 or params[i] is None or mol.atoms[i].element == "H":
                continue
            ci = chi(params[i], q[i])
            ch = chi(h_param, qh[i])
            if ci == ch:
                continue
            if ch < ci:  # hydrogen donates
                t = (ci - ch) / _CHI_PLUS_H * damp
                delta_h[i] += t
                delta[i] -= t * hcount
            else:
                t = (ch - ci) / sum(params[i]) * damp
                delta[i] += t * hcount
                delta_h[i] -= t
        for i in range(n):
            q[i] += delta[i]
            qh[i] += delta_h[i]

    for i in range(n):
        mol.atoms[i].partial_charge = q[i] if params[i] is not None else 0.0
    return q, qh
