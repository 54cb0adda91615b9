#!/usr/bin/env python3
"""Independent reference for the exercise generator stream.

Prints the golden values frozen into tests/unit/test_generator.cpp and the
acceptance suite. Arbitrary-precision ints stand in for uint64 arithmetic.
"""
MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def uniform(self, lo, hi):
        n = hi - lo + 1
        limit = ((1 << 64) // n) * n
        while True:
            z = self.next()
            if z < limit:
                return lo + z % n


def targets(seed, range_max, count):
    g = SplitMix64(seed)
    out, prev = [], None
    for _ in range(count):
        t = g.uniform(1, range_max)
        if t == prev:
            t = g.uniform(1, range_max)
        out.append(t)
        prev = t
    return out, g.state


if __name__ == "__main__":
    g = SplitMix64(0)
    print("seed0 first three:", [hex(g.next()) for _ in range(3)])
    print("seed1 uniform(0,1499) first:", SplitMix64(1).uniform(0, 1499))
    print("seed1 first caliper target:", targets(1, 1500, 1)[0][0])
    print("seed7 caliper x5:", targets(7, 1500, 5)[0])
    for name, rmax in (("caliper", 1500), ("micrometer", 2500), ("dial", 1000), ("protractor", 1800)):
        t, st = targets(42, rmax, 1000)
        print(f"seed42 {name} x1000: sum={sum(t)} first5={t[:5]} last={t[-1]} state={hex(st)}")
    g = SplitMix64(2024)
    counts = [0] * 10
    for _ in range(10000):
        counts[g.uniform(0, 9)] += 1
    chi = sum((c - 1000) ** 2 / 1000 for c in counts)
    print("seed2024 10000x[0,9] counts:", counts, "chi2=%.4f" % chi)
