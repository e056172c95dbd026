"""Reference PCG64 (XSL-RR 128/64) vectors.

Pure big-int port of the pcg-c reference routines, cross-checked against
numpy's PCG64 by injecting the same 128-bit state/increment.
"""
import numpy as np

MASK128 = (1 << 128) - 1
MASK64 = (1 << 64) - 1
MULT = (2549297995355413924 << 64) + 4865540595714422341


def step(state, inc):
    return (state * MULT + inc) & MASK128


def output(state):
    v = ((state >> 64) ^ state) & MASK64
    r = state >> 122
    return ((v >> r) | (v << ((64 - r) & 63))) & MASK64


def srandom(initstate, initseq):
    inc = ((initseq << 1) | 1) & MASK128
    state = step(0, inc)
    state = (state + initstate) & MASK128
    state = step(state, inc)
    return state, inc


def draws(initstate, initseq, count):
    state, inc = srandom(initstate, initseq)
    out = []
    for _ in range(count):
        state = step(state, inc)
        out.append(output(state))
    return state, inc, out


def numpy_draws(initstate, initseq, count):
    state, inc = srandom(initstate, initseq)
    bg = np.random.PCG64()
    st = bg.state
    st["state"] = {"state": state, "inc": inc}
    st["has_uint32"] = 0
    bg.state = st
    return [int(x) for x in bg.random_raw(count)]


if __name__ == "__main__":
    for seed, seq in [(42, 54), (0, 0), (0xDEADBEEF, 7)]:
        state, inc, ref = draws(seed, seq, 6)
        assert ref == numpy_draws(seed, seq, 6), "numpy disagrees"
        s0, _ = srandom(seed, seq)
        print(f"seed={seed:#x} seq={seq} init_state={s0:#034x} inc={inc:#034x}")
        print("  ", " ".join(f"{x:#018x}" for x in ref))
