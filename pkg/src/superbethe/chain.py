"""Inhomogeneous fundamental spin chain of gl(m|n) with a diagonal twist.

The monodromy matrix is T(u) = K R_{0L}(u, z_L) ... R_{01}(u, z_1) acting on
aux (x) chain, with the auxiliary space as the leftmost tensor factor.  Its
entries are never stored: T_ij(u) is applied to a state on demand by running
e_j (x) psi through the R-matrices and reading off the e_i component.
"""

from . import kernel
from .graded import Bra, Ket, swap_sign
from .scalars import PoleError, Profile, to_scalar


class SpinChain:
    def __init__(self, prof, z, twist=None):
        self.prof = prof
        self.z = tuple(to_scalar(x) for x in z)
        if len(set(self.z)) != len(self.z):
            raise ValueError("inhomogeneities must be pairwise distinct")
        if twist is None:
            twist = [1] * prof.dim
        if len(twist) != prof.dim:
            raise ValueError("twist needs %d entries" % prof.dim)
        self.twist = tuple(to_scalar(k) for k in twist)
        if any(k == 0 for k in self.twist):
            raise ValueError("twist entries must be nonzero")

    @property
    def L(self):
        return len(self.z)

    def with_sites(self, z, twist=None):
        return SpinChain(self.prof, z, self.twist if twist is None else twist)

    def vacuum(self):
        return Ket({(1,) * self.L: 1})

    def covacuum(self):
        return Bra({(1,) * self.L: 1})

    def lam(self, i, u):
        """Vacuum eigenvalue of T_ii(u)."""
        out = self.twist[i - 1]
        if i == 1:
            for zk in self.z:
                out = out * kernel.f(u, zk, self.prof.c)
        return out

    def _check_u(self, u):
        for zk in self.z:
            if u == zk:
                raise PoleError("spectral parameter %s hits inhomogeneity" % (u,))

    def _run(self, u, ext, order):
        """Push an aux(x)chain sparse vector through the R-matrices in ``order``."""
        prof = self.prof
        c = prof.c
        for k in order:
            gk = kernel.g(u, self.z[k - 1], c)
            new = {}
            for key, coeff in ext.items():
                new[key] = new.get(key, 0) + coeff
                sw = list(key)
                sw[0], sw[k] = key[k], key[0]
                sw = tuple(sw)
                new[sw] = new.get(sw, 0) + swap_sign(prof, key, 0, k) * gk * coeff
            ext = {k2: v for k2, v in new.items() if v != 0}
        return ext

    def apply(self, i, j, u, psi):
        """T_ij(u) psi."""
        self._check_u(u)
        prof = self.prof
        ext = {(j,) + key: coeff for key, coeff in psi.items()}
        ext = self._run(u, ext, range(1, self.L + 1))
        s = self.twist[i - 1]
        if ((prof.parity(i) + prof.parity(j)) * prof.parity(j)) % 2:
            s = -s
        out = Ket()
        for key, coeff in ext.items():
            if key[0] == i:
                out.add_term(key[1:], s * coeff)
        return out

    def apply_bra(self, phi, i, j, u):
        """<phi| T_ij(u), the row vector times the operator."""
        self._check_u(u)
        prof = self.prof
        ext = {(i,) + key: coeff * self.twist[i - 1] for key, coeff in phi.items()}
        ext = self._run(u, ext, range(self.L, 0, -1))
        s = -1 if ((prof.parity(i) + prof.parity(j)) * prof.parity(j)) % 2 else 1
        out = Bra()
        for key, coeff in ext.items():
            if key[0] == j:
                out.add_term(key[1:], s * coeff)
        return out

    def apply_word(self, word, psi):
        """Apply letters (i, j, u) right to left: the word acts as an operator product."""
        for i, j, u in reversed(word):
            psi = self.apply(i, j, u, psi)
        return psi

    def bra_word(self, phi, word):
        for i, j, u in word:
            phi = self.apply_bra(phi, i, j, u)
        return phi

    def transfer(self, u, psi):
        """Supertrace sum_i (-1)^[i] T_ii(u) psi."""
        out = Ket()
        for i in range(1, self.prof.dim + 1):
            term = self.apply(i, i, u, psi)
            out = out - term if self.prof.parity(i) else out + term
        return out

    def split(self, L1):
        """Two sub-chains: sites 1..L1 untwisted and the rest carrying the twist."""
        first = SpinChain(self.prof, self.z[:L1])
        second = SpinChain(self.prof, self.z[L1:], self.twist)
        return first, second

    def config(self):
        from .scalars import format_scalar
        return {"m": self.prof.m, "n": self.prof.n, "c": format_scalar(self.prof.c),
                "L": self.L, "inhomogeneities": [format_scalar(x) for x in self.z],
                "twist": [format_scalar(x) for x in self.twist]}

    @classmethod
    def from_config(cls, block):
        prof = Profile(block["m"], block["n"], to_scalar(block.get("c", "1")))
        z = [to_scalar(x) for x in block.get("inhomogeneities", [])]
        if "L" in block and block["L"] != len(z):
            raise ValueError("model.L = %r but %d inhomogeneities given"
                             % (block["L"], len(z)))
        twist = block.get("twist")
        return cls(prof, z, None if twist is None else [to_scalar(x) for x in twist])
