"""Built-in Cartan data used by the test suites and the CLI.

Dot matrices follow the anisotropic normalization where the odd simple
root is short (i.i = 2).  Long-root factors use i.i = 4 so that
d_i ≡ p(i) mod 2 holds throughout.
"""

from .cartan import RootDatum, SuperCartanDatum, TwistForm

CATALOG = {
    # rank 1, one odd root
    "osp12": {
        "indices": ["1"],
        "dot": [[2]],
        "parity": [1],
    },
    # rank 2, disconnected: odd short root plus an even long root
    # (the even factor must be long, else condition (d) fails on it)
    "osp12_a1": {
        "indices": ["1", "2"],
        "dot": [[2, 0], [0, 4]],
        "parity": [1, 0],
    },
    # rank 2, connected: the running example
    "osp14": {
        "indices": ["1", "2"],
        "dot": [[2, -2], [-2, 4]],
        "parity": [1, 0],
    },
    # rank 3
    "osp16": {
        "indices": ["1", "2", "3"],
        "dot": [[2, -2, 0], [-2, 4, -2], [0, -2, 4]],
        "parity": [1, 0, 0],
    },
    # affine rank 2 (singular Cartan matrix): even long affine node "0"
    # attached to the odd short root, B(0,1)^(1) type
    "affine_b01": {
        "indices": ["0", "1"],
        "dot": [[8, -4], [-4, 2]],
        "parity": [0, 1],
    },
}


def catalog_datum(name):
    """(datum, root, twistform) for a catalog entry; KeyError on bad name."""
    data = CATALOG[name]
    datum = SuperCartanDatum(data["indices"], data["dot"], data["parity"])
    root = RootDatum.simply_connected(datum)
    return datum, root, TwistForm(datum, root)


def finite_catalog_names():
    """Catalog entries with nonsingular Cartan matrix (module-sized)."""
    return ["osp12", "osp12_a1", "osp14", "osp16"]


def all_catalog_names():
    return list(CATALOG)
