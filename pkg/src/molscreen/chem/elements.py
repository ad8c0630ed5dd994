"""Element data: symbols, valences, masses, and electronegativity parameters."""

from __future__ import annotations

# Symbols indexed by atomic number, 1..118.
SYMBOLS = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne",
    "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr",
    "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn",
    "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb",
    "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm",
    "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds",
    "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
]

ATOMIC_NUMBER = {sym: i + 1 for i, sym in enumerate(SYMBOLS)}

# Atoms writable without brackets; aromatic lowercase forms in SMILES.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_SUBSET = {"b", "c", "n", "o", "p", "s"}

# Allowed valences (bond-order sum + hydrogens) for neutral atoms.  Elements
# absent from this table skip the valence check and get no implicit hydrogens.
VALENCES = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1, 3, 5, 7),
    "Br": (1, 3, 5, 7),
    "I": (1, 3, 5, 7),
}

# Periodic main group, used to decide how formal charge shifts valence.
GROUP = {
    "H": 1,
    "B": 13, "Al": 13,
    "C": 14, "Si": 14,
    "N": 15, "P": 15, "As": 15,
    "O": 16, "S": 16, "Se": 16,
    "F": 17, "Cl": 17, "Br": 17, "I": 17,
}

# Standard atomic weights, enough for drug-like chemistry.  Elements not
# listed contribute 0 to molecular weight (flagged by the descriptor layer).
ATOMIC_MASS = {
    "H": 1.008, "He": 4.003, "Li": 6.94, "Be": 9.012, "B": 10.81,
    "C": 12.011, "N": 14.007, "O": 15.999, "F": 18.998, "Ne": 20.180,
    "Na": 22.990, "Mg": 24.305, "Al": 26.982, "Si": 28.085, "P": 30.974,
    "S": 32.06, "Cl": 35.45, "K": 39.098, "Ar": 39.948, "Ca": 40.078,
    "Sc": 44.956, "Ti": 47.867, "V": 50.942, "Cr": 51.996, "Mn": 54.938,
    "Fe": 55.845, "Co": 58.933, "Ni": 58.693, "Cu": 63.546, "Zn": 65.38,
    "Ga": 69.723, "Ge": 72.630, "As": 74.922, "Se": 78.971, "Br": 79.904,
    "Kr": 83.798, "Rb": 85.468, "Sr": 87.62, "Mo": 95.95, "Ru": 101.07,
    "Rh": 102.906, "Pd": 106.42, "Ag": 107.868, "Cd": 112.414,
    "In": 114.818, "Sn": 118.710, "Sb": 121.760, "Te": 127.60,
    "I": 126.904, "Xe": 131.293, "Cs": 132.905, "Ba": 137.327,
    "W": 183.84, "Pt": 195.084, "Au": 196.967, "Hg": 200.592,
    "Tl": 204.38, "Pb": 207.2, "Bi": 208.980,
}

HALOGENS = {"F", "Cl", "Br", "I"}


def allowed_valences(symbol: str, charge: int) -> tuple[int, ...] | None:
    """Charge-adjusted valence tuple, or None when the element is untabulated.

    Main-group charge shift: groups 15-17 gain capacity with positive charge
    (ammonium N binds 4), group 13 with negative charge (borate B binds 4),
    and group 14 loses capacity with charge of either sign.
    """
    base = VALENCES.get(symbol)
    if base is None:
        return None
    if charge == 0:
        return base
    group = GROUP.get(symbol)
    if group is None:
        return None
    if group in (1, 15, 16, 17):
        shift = charge
    elif group == 13:
        shift = -charge
    else:  # group 14
        shift = -abs(charge)
    vals = tuple(sorted({v + shift for v in base if v + shift >= 0}))
    return vals or None
