#!/usr/bin/env python3
"""Regenerates the .qc circuit benchmarks.

Multi-controlled Toffoli networks follow the standard ancilla constructions
(clean-ancilla chains and the dirty-ancilla V-chains), the ripple adder is
the usual CARRY/SUM network, and mod5_4 is the mod-5 phase oracle. Toffoli
gates are expanded over Clifford+T.
"""

import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "circuits")


def toffoli(a, b, c):
    # Clifford+T expansion of a Toffoli with target c
    return [
        f"T {a}", f"T {b}", f"H {c}",
        f"tof {c} {a}", f"T* {a}", f"tof {b} {c}", f"tof {b} {a}", f"T* {c}",
        f"T {a}", f"tof {b} {c}", f"tof {c} {a}", f"T* {a}", f"T {c}",
        f"tof {b} {a}", f"H {c}",
    ]


def ccz(a, b, c):
    # CNOT+T phase network, no Hadamards
    return [
        f"T {a}", f"T {b}", f"T {c}",
        f"tof {a} {b}", f"T* {b}",
        f"tof {a} {c}", f"T* {c}",
        f"tof {b} {c}", f"T* {c}",
        f"tof {a} {c}", f"T {c}",
        f"tof {b} {c}", f"tof {a} {b}",
    ]


def cz(a, b):
    return [f"P {a}", f"P {b}", f"tof {a} {b}", f"P* {b}", f"tof {a} {b}"]


def write_qc(name, wires, inputs, gates):
    path = os.path.join(OUT, name + ".qc")
    with open(path, "w") as f:
        f.write(".v " + " ".join(wires) + "\n")
        f.write(".i " + " ".join(inputs) + "\n")
        f.write(".o " + " ".join(wires) + "\n\n")
        f.write("BEGIN\n")
        for g in gates:
            f.write(g + "\n")
        f.write("END\n")
    print("wrote", path, f"({len(gates)} gates)")


def barenco_clean(k):
    controls = [f"c{i}" for i in range(1, k + 1)]
    anc = [f"a{i}" for i in range(1, k - 1)]
    wires = controls + anc + ["t"]
    seq = []
    fwd = [(controls[0], controls[1], anc[0])]
    for j in range(k - 3):
        fwd.append((controls[j + 2], anc[j], anc[j + 1]))
    gates = []
    for tri in fwd:
        gates += toffoli(*tri)
    gates += toffoli(controls[-1], anc[-1], "t")
    for tri in reversed(fwd):
        gates += toffoli(*tri)
    write_qc(f"barenco_tof_{k}", wires, controls + ["t"], gates)


def barenco_dirty(k):
    # V-chain over k-2 borrowed ancillas: the descending ladder touches the
    # target once per half, and each half recomputes the borrowed values.
    controls = [f"c{i}" for i in range(1, k + 1)]
    anc = [f"a{i}" for i in range(1, k - 1)]
    wires = controls + anc + ["t"]
    ladder = []
    for i in range(k, 2, -1):
        target = "t" if i == k else anc[i - 2]
        ladder.append((controls[i - 1], anc[i - 3], target))
    mid = (controls[0], controls[1], anc[0])
    first = ladder + [mid] + list(reversed(ladder))
    second = ladder[1:] + [mid] + list(reversed(ladder[1:]))
    gates = []
    for tri in first + second:
        gates += toffoli(*tri)
    write_qc(f"barenco_tof_{k}_dirty", wires, wires, gates)


def vbe_adder_3():
    a = [f"a{i}" for i in range(3)]
    b = [f"b{i}" for i in range(4)]
    c = [f"c{i}" for i in range(3)]
    wires = a + b + c
    inputs = a + b[:3]

    def carry(ci, ai, bi, co):
        return toffoli(ai, bi, co) + [f"tof {ai} {bi}"] + toffoli(ci, bi, co)

    def icarry(ci, ai, bi, co):
        return toffoli(ci, bi, co) + [f"tof {ai} {bi}"] + toffoli(ai, bi, co)

    def summ(ci, ai, bi):
        return [f"tof {ai} {bi}", f"tof {ci} {bi}"]

    gates = []
    gates += carry(c[0], a[0], b[0], c[1])
    gates += carry(c[1], a[1], b[1], c[2])
    gates += carry(c[2], a[2], b[2], b[3])
    gates += [f"tof a2 b2"]
    gates += summ(c[2], a[2], b[2])
    gates += icarry(c[1], a[1], b[1], c[2])
    gates += summ(c[1], a[1], b[1])
    gates += icarry(c[0], a[0], b[0], c[1])
    gates += summ(c[0], a[0], b[0])
    write_qc("vbe_adder_3", wires, inputs, gates)


def mod5_4():
    # Phase oracle for x = 0 mod 5 on 4 bits: f = (1+x1+x3)(1+x2+x4),
    # kicked back onto the output wire.
    wires = ["1", "2", "3", "4", "5"]
    gates = ["x 5", "H 5"]
    gates += ccz("1", "2", "5")
    gates += ccz("1", "4", "5")
    gates += ccz("2", "3", "5")
    gates += ccz("3", "4", "5")
    gates += cz("1", "5")
    gates += cz("2", "5")
    gates += cz("3", "5")
    gates += cz("4", "5")
    gates += ["Z 5", "H 5"]
    write_qc("mod5_4", wires, wires[:4], gates)


def qft_4():
    # 4-bit Fourier transform skeleton over Clifford+T: exact controlled-S
    # for the R2 tier, fixed Clifford+T approximation words for the finer
    # rotations, and a compound controlled-phase gadget on the work line.
    def cs(a, b):
        return [f"T {a}", f"T {b}", f"tof {a} {b}", f"T* {b}", f"tof {a} {b}"]

    def word(q, k):
        out = []
        for _ in range(k):
            out += [f"H {q}", f"T {q}"]
        return out + [f"H {q}"]

    gates = []
    gates += ["H 1"] + cs("2", "1") + word("1", 8)
    gates += ["H 2"] + cs("3", "2") + word("2", 8)
    gates += ["H 3"] + cs("4", "3") + word("3", 8)
    gates += word("4", 8)
    # work-line gadget: three Toffolis whose control products cancel
    gates += ["T 5"]
    gates += ["tof 3 2"] + toffoli("4", "2", "5") + ["tof 3 2", "P 5"]
    gates += ["tof 1 2"] + toffoli("4", "2", "5") + ["tof 1 2", "P 5"]
    gates += ["tof 1 3"] + toffoli("4", "3", "5") + ["tof 1 3"]
    gates += ["T* 5"]
    gates += word("5", 5)
    write_qc("qft_4", ["1", "2", "3", "4", "5"], ["1", "2", "3", "4", "5"], gates)


def main():
    os.makedirs(OUT, exist_ok=True)
    for k in (3, 4, 5, 10):
        barenco_clean(k)
        barenco_dirty(k)
    vbe_adder_3()
    mod5_4()
    qft_4()


if __name__ == "__main__":
    main()
