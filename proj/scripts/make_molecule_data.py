#!/usr/bin/env python3
# Copyright 2026 The pie-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates the H2 / LiH qubit Hamiltonians and optimized SU(2) ansatz angles.

Electronic-only Hamiltonians (nuclear repulsion removed), STO-3G, Jordan-Wigner.
Angles are optimized for the pie-lab SU(2) ansatz convention: qubit q is bit q
of the basis index, rotation blocks of RY then RZ on every qubit, CNOT(i, i+1)
ladders between blocks.

Usage: python3 scripts/make_molecule_data.py [--only h2|lih] [--out data]
"""

import argparse
import json
import pathlib

import numpy as np
import scipy.optimize
import scipy.sparse
import scipy.sparse.linalg
from openfermion import jordan_wigner
from openfermion.chem import MolecularData
from openfermionpyscf import run_pyscf

MOLECULES = {
    "h2": dict(geometry=[("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.74))], qubits=4),
    "lih": dict(geometry=[("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.6))], qubits=12),
}

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def qubit_hamiltonian(name):
    spec = MOLECULES[name]
    mol = MolecularData(spec["geometry"], "sto-3g", 1, 0)
    mol = run_pyscf(mol, run_fci=True)
    op = jordan_wigner(mol.get_molecular_hamiltonian())
    n = spec["qubits"]
    offset = 0.0
    terms = []
    for term, coeff in sorted(op.terms.items()):
        c = float(np.real(coeff))
        if abs(c) < 1e-12:
            continue
        if not term:
            offset += c
            continue
        letters = ["I"] * n
        for q, p in term:
            letters[n - 1 - q] = p
        terms.append({"pauli": "".join(letters), "coeff": c})
    offset -= mol.nuclear_repulsion
    return {"qubits": n, "terms": terms, "offset": offset}, mol.fci_energy - mol.nuclear_repulsion


def sparse_pauli(letters):
    n = len(letters)
    dim = 1 << n
    idx = np.arange(dim)
    xmask = zmask = 0
    ny = 0
    for pos, l in enumerate(letters):
        q = n - 1 - pos
        if l in "XY":
            xmask |= 1 << q
        if l in "ZY":
            zmask |= 1 << q
        ny += l == "Y"
    parity = np.array([bin(k & zmask).count("1") & 1 for k in range(dim)])
    phase = (1j) ** ny * (-1.0) ** parity
    return scipy.sparse.csr_matrix((phase, (idx ^ xmask, idx)), shape=(dim, dim))


def hamiltonian_matrix(h):
    dim = 1 << h["qubits"]
    m = scipy.sparse.identity(dim, dtype=complex, format="csr") * h["offset"]
    for t in h["terms"]:
        m = m + t["coeff"] * sparse_pauli(t["pauli"])
    return m.tocsr()


def apply_1q(psi, n, q, u):
    psi = psi.reshape([2] * n)
    axis = n - 1 - q
    psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
    return psi.reshape(-1)


def apply_cnot(psi, n, c, t):
    idx = np.arange(1 << n)
    src = np.where((idx >> c) & 1, idx ^ (1 << t), idx)
    return psi[src]


def ry(a):
    return np.array([[np.cos(a / 2), -np.sin(a / 2)], [np.sin(a / 2), np.cos(a / 2)]], dtype=complex)


def rz(a):
    return np.diag([np.exp(-0.5j * a), np.exp(0.5j * a)])


def ansatz_state(angles, n, layers):
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1.0
    k = 0
    for block in range(layers + 1):
        for q in range(n):
            psi = apply_1q(psi, n, q, ry(angles[k]))
            k += 1
        for q in range(n):
            psi = apply_1q(psi, n, q, rz(angles[k]))
            k += 1
        if block < layers:
            for q in range(n - 1):
                psi = apply_cnot(psi, n, q, q + 1)
    return psi


def optimize(h, layers, seed):
    n = h["qubits"]
    hm = hamiltonian_matrix(h)
    count = 2 * n * (layers + 1)

    def energy(a):
        psi = ansatz_state(a, n, layers)
        return float(np.real(np.vdot(psi, hm @ psi)))

    rng = np.random.default_rng(seed)
    best = None
    for _ in range(4):
        x0 = rng.uniform(-0.1, 0.1, count)
        res = scipy.optimize.minimize(energy, x0, method="L-BFGS-B", options={"maxiter": 4000})
        if best is None or res.fun < best.fun:
            best = res
    return [float(v) for v in best.x], best.fun


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", choices=sorted(MOLECULES))
    ap.add_argument("--out", default="data")
    ap.add_argument("--layers", type=int, default=2)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in MOLECULES:
        if args.only and name != args.only:
            continue
        h, e_fci = qubit_hamiltonian(name)
        angles, e_ansatz = optimize(h, args.layers, seed=11)
        (out / f"{name}_hamiltonian.json").write_text(json.dumps(h, indent=1) + "\n")
        (out / f"{name}_angles.json").write_text(
            json.dumps({"layers": args.layers, "angles": angles, "energy": e_ansatz, "fci_electronic": e_fci}, indent=1)
            + "\n"
        )
        print(f"{name}: {len(h['terms'])} terms, FCI (electronic) {e_fci:.6f}, ansatz {e_ansatz:.6f}")


if __name__ == "__main__":
    main()
