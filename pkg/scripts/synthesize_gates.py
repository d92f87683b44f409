#!/usr/bin/env python3
"""Synthesize a table of Y and Z rotations and report their infidelities."""
import math

from chirpgate import su2, synthesis as syn

ANGLES = [k * math.pi for k in (1 / 6, 1 / 3, 5 / 12, 3 / 4, 1.5)]


def main():
    print("axis,phi,n_blocks,n_pulses,infidelity")
    for axis in ("Y", "Z"):
        for phi in ANGLES + [-p for p in ANGLES]:
            seq = syn.synthesize_gate(axis, phi)
            inf = 1 - su2.gate_fidelity(syn.evaluate_sequence(seq), syn.target_gate(axis, phi))
            print(f"{axis},{phi:.6f},{seq.n_blocks},{len(seq)},{inf:.2e}")


if __name__ == "__main__":
    main()
