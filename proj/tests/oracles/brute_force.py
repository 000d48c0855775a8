"""Independent brute-force oracle for frozen test values.

Works on prime fields directly with integer arithmetic and on F_{p^k} via
explicit polynomial tuples; shares no code with the C++ library.
"""
from itertools import combinations, product


def poly_is_irreducible(p, coeffs):
    # coeffs low-degree-first, monic; brute force over all monic factors
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            f = list(low) + [1]
            # long division
            r = list(coeffs)
            for i in range(k - d, -1, -1):
                c = r[i + d]
                for j in range(d + 1):
                    r[i + j] = (r[i + j] - c * f[j]) % p
            if all(v == 0 for v in r[:d]):
                return False
    return True


def least_irreducible(p, k):
    # compare c0 first, then c1, ...
    for digits in product(range(p), repeat=k):
        coeffs = list(digits) + [1]
        if poly_is_irreducible(p, coeffs):
            return coeffs


class Fq:
    def __init__(self, p, k):
        self.p, self.k, self.q = p, k, p ** k
        self.mod = least_irreducible(p, k)

    def digits(self, x):
        return [(x // self.p ** i) % self.p for i in range(self.k)]

    def index(self, d):
        return sum(c * self.p ** i for i, c in enumerate(d))

    def add(self, x, y):
        return self.index([(a + b) % self.p for a, b in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        return self.index([(-a) % self.p for a in self.digits(x)])

    def mul(self, x, y):
        a, b, p, k = self.digits(x), self.digits(y), self.p, self.k
        prod_ = [0] * (2 * k - 1)
        for i in range(k):
            for j in range(k):
                prod_[i + j] = (prod_[i + j] + a[i] * b[j]) % p
        for i in range(2 * k - 2, k - 1, -1):
            c = prod_[i]
            for j in range(k + 1):
                prod_[i - k + j] = (prod_[i - k + j] - c * self.mod[j]) % p
        return self.index(prod_[:k])

    def inv(self, x):
        for y in range(1, self.q):
            if self.mul(x, y) == 1:
                return y


def sumset(F, A, B):
    return {F.add(a, b) for a in A for b in B}


def prodset(F, A, B):
    return {F.mul(a, b) for a in A for b in B}


def min_max_st(F, m, exclude_zero):
    univ = range(1 if exclude_zero else 0, F.q)
    best = None
    for A in combinations(univ, m):
        v = max(len(sumset(F, A, A)), len(prodset(F, A, A)))
        best = v if best is None else min(best, v)
    return best


def affine_image_count(F, G):
    seen = set()
    for c in range(1, F.q):
        for d in range(F.q):
            seen.add(frozenset(F.add(F.mul(c, g), d) for g in G))
    return len(seen)


def subfield(F, d):
    e = F.p ** d
    out = []
    for x in range(F.q):
        y = 1
        for _ in range(e):
            y = F.mul(y, x)
        if y == x:
            out.append(x)
    return out


if __name__ == "__main__":
    print("mod 3^2", least_irreducible(3, 2))
    print("mod 2^2", least_irreducible(2, 2))
    for pk in [(2, 3), (2, 4), (2, 6), (2, 8), (3, 3), (3, 4), (5, 2), (5, 3)]:
        print("mod", pk, least_irreducible(*pk))
    F7 = Fq(7, 1)
    print("inv 3 in F7", F7.inv(3))
    print("F5 m3 excl", min_max_st(Fq(5, 1), 3, True), "incl", min_max_st(Fq(5, 1), 3, False))
    print("F7 m3 excl", min_max_st(F7, 3, True), "incl", min_max_st(F7, 3, False))
    F16 = Fq(2, 4)
    print("F16 d=2 subfield", subfield(F16, 2))
    print("F16/F4 images", affine_image_count(F16, subfield(F16, 2)))
    F4 = Fq(2, 2)
    print("F4/F2 images", affine_image_count(F4, subfield(F4, 1)))
    # quadruple counts
    A = [0, 1]
    x = 6
    E = sum(1 for a1, a2, b1, b2 in product(A, repeat=4) if (a1 + x * b2) % 7 == (a2 + x * b1) % 7)
    print("collision F7 {0,1} x=6", E)
    A = [1, 2, 3]
    ME = sum(1 for a, b, c, d in product(A, repeat=4) if (a * b) % 7 == (c * d) % 7)
    print("mult energy F7 {1,2,3}", ME)
    # ratio of differences F11 {1,2,5}
    A = [1, 2, 5]
    R = {((a1 - a2) * pow(b1 - b2, -1, 11)) % 11 for a1, a2, b1, b2 in product(A, repeat=4) if b1 != b2}
    print("F11 R", sorted(R), len(R))
    best = None
    for x in sorted(R):
        E = sum(1 for a1, a2, b1, b2 in product(A, repeat=4) if (a1 + x * b2) % 11 == (a2 + x * b1) % 11)
        S = len({(a + x * b) % 11 for a in A for b in A})
        if best is None or E < best[1]:
            best = (x, E, S)
    print("F11 lemma11 witness (x,E,|A+xA|)", best)
    # Cor 1.8 example F7 A={1,2,3}, a1=2,a2=3,b=1
    A = [1, 2, 3]
    l1 = len({(6 * a + b) % 7 for a in A for b in A})
    l2 = len({(6 * a - b) % 7 for a in A for b in A})
    print("cor18 F7 lhs plus", l1, "minus", l2)


def minimizer_masks(F, m, exclude_zero):
    univ = range(1 if exclude_zero else 0, F.q)
    rows = []
    for A in combinations(univ, m):
        rows.append((max(len(sumset(F, A, A)), len(prodset(F, A, A))), A))
    best = min(r[0] for r in rows)
    # combinations() yields lexicographic order; sort by colex (largest element first).
    hits = sorted((A for v, A in rows if v == best), key=lambda A: tuple(reversed(A)))
    return best, [format(sum(1 << a for a in A), "x") for A in hits]


def extra():
    print("F5 m3 incl minimizers", minimizer_masks(Fq(5, 1), 3, False))
    print("F7 m3 excl minimizers", minimizer_masks(Fq(7, 1), 3, True))
    F16 = Fq(2, 4)
    A = [1, 2, 3, 7]
    print("F16 {1,2,3,7} sum", sorted(sumset(F16, A, A)), "prod", sorted(prodset(F16, A, A)))
    F9 = Fq(3, 2)
    B = [1, 3, 5]
    print("F9 {1,3,5} sum", sorted(sumset(F9, B, B)), "prod", sorted(prodset(F9, B, B)))


if __name__ == "__main__":
    extra()


def pigeonhole(F, A):
    # argmax |A1|*N; ties: least b0, then largest N.
    L = len(A).bit_length()
    best = None
    for b0 in sorted(A):
        counts = {a: len({F.mul(b0, x) for x in A} & {F.mul(a, x) for x in A}) for a in A}
        for j in range(L):
            N = 1 << j
            A1 = sorted(a for a in A if N <= counts[a] < 2 * N)
            key = (len(A1) * N, -b0, N)
            if best is None or key > best[0]:
                best = (key, b0, N, A1)
    return best[1:]


if __name__ == "__main__":
    F7 = Fq(7, 1)
    print("pigeonhole F7 {1,2,3}", pigeonhole(F7, [1, 2, 3]))
    print("pigeonhole F7 {1,2,4}", pigeonhole(F7, [1, 2, 4]))
    print("pigeonhole F13 {1,2,3,5,8}", pigeonhole(Fq(13, 1), [1, 2, 3, 5, 8]))
    print("pigeonhole F16 {1,2,3,7,9}", pigeonhole(Fq(2, 4), [1, 2, 3, 7, 9]))
