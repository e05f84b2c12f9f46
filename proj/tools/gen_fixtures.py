#!/usr/bin/env python3
# Copyright 2026 The fastvqe Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the shipped FCIDUMP fixtures (RHF canonical orbitals, STO-3G).

Requires PySCF. Output goes to data/ next to this script's parent directory.
Each file starts with '#' comment lines recording geometry and reference
energies; the C++ reader skips them.
"""
import io
import os
import sys

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

SYSTEMS = {
    "h2": "H 0 0 0; H 0 0 0.735",
    "h4": "H 0 0 0; H 0 0 1.5; H 0 0 3.0; H 0 0 4.5",
    "lih": "Li 0 0 0; H 0 0 1.5",
}


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for name, atoms in SYSTEMS.items():
        mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", verbose=0)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        mf.kernel()
        e_fci = fci.FCI(mf).kernel()[0]
        path = os.path.join(out_dir, name + ".fcidump")
        fcidump.from_scf(mf, path, tol=1e-15)
        with open(path) as f:
            body = f.read()
        with open(path, "w") as f:
            f.write(f"# {name.upper()} STO-3G, RHF canonical orbitals, no frozen core\n")
            f.write(f"# geometry (Angstrom): {atoms}\n")
            f.write(f"# E_RHF = {mf.e_tot:.12f}  E_FCI = {e_fci:.12f}\n")
            f.write(body)
        print(name, mol.nao, mol.nelectron, mf.e_tot, e_fci)


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "data"))
