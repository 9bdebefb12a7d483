"""Constructs membership scripts for the certified target families.

The supported targets, with b the relation exponent and n = b + 1:

* x_k * x_b^N * delta                      (0 <= k <= b, N >= 1; N >= 0 for k
  in {b-1, b}, where the field is already a complete leaf)
* x0^M * x_k * x_b^N * eps                 (0 <= k <= b, N >= 1, M >= 0)
* y^(b+R) * eps                            (R >= 0)
* y^(b+R) * x0^M * x_k * x_b^N * eps       (R >= 0, M >= 0, N >= 1)
* any generator word (z allowed) times the module generator
  x0*x1*...*xb*y^b*eps

Every emitted step carries a claim computed from the closed-form
identities of the bracket calculus, never by calling the generic bracket
routine; verify_script recomputes each step generically, so planning and
verification are independent computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..derivation import Derivation
from ..genring import GeneratorWord, eliminate_z, x_normal_form
from ..polyring import SurfaceParameters
from .certificates import (
    CompletenessCertificate,
    diagonal_certificate,
    function_times_field_certificate,
    lnd_certificate,
)
from .fields import StandardFields, standard_fields, word_field
from .scripts import MembershipScript, ScriptStep, StepKind


class UnsupportedTargetError(ValueError):
    """The requested field is outside the certified target families."""


def _falling(b: int, count: int) -> int:
    out = 1
    for i in range(count):
        out *= b - i
    return out


def module_generator_word(params: SurfaceParameters) -> GeneratorWord:
    """The word x0*x1*...*xb*y^b generating the distinguished module."""
    return GeneratorWord.from_indices(
        params, tuple(range(params.b + 1)), ry=params.b
    )


class _Builder:
    def __init__(self, params: SurfaceParameters):
        self.params = params
        self.b = params.b
        self.n = params.n
        self.std: StandardFields = standard_fields(params)
        self.steps: list[ScriptStep] = []
        self.cache: dict[tuple, int] = {}
        self._base_certs: dict[str, CompletenessCertificate] = {}

    # -- low-level step emission ------------------------------------------

    def _emit(self, key: tuple, step: ScriptStep) -> int:
        if key in self.cache:
            return self.cache[key]
        self.steps.append(step)
        idx = len(self.steps) - 1
        self.cache[key] = idx
        return idx

    def leaf(self, label: str, cert: CompletenessCertificate) -> int:
        return self._emit(
            ("leaf", label),
            ScriptStep(StepKind.LEAF, cert.field, certificate=cert, label=label),
        )

    def brk(self, key: tuple, i: int, j: int, claim: Derivation, label: str) -> int:
        return self._emit(
            key, ScriptStep(StepKind.BRACKET, claim, refs=(i, j), label=label)
        )

    def lin(
        self,
        key: tuple,
        refs: list[int],
        scalars: list[Fraction],
        claim: Derivation,
        label: str,
    ) -> int:
        return self._emit(
            key,
            ScriptStep(
                StepKind.LINCOMB,
                claim,
                refs=tuple(refs),
                scalars=tuple(scalars),
                label=label,
            ),
        )

    # -- word and claim helpers -------------------------------------------

    def word(self, M: int = 0, h: int | None = None, N: int = 0, ry: int = 0) -> GeneratorWord:
        """The word y^ry * x0^M * x_h * xb^N."""
        idxs = [0] * M + [self.b] * N + ([h] if h is not None else [])
        return GeneratorWord.from_indices(self.params, idxs, ry=ry)

    def combo(self, *pairs: tuple[Fraction | int, GeneratorWord, Derivation]) -> Derivation:
        total = Derivation.zero(self.params)
        for c, w, base in pairs:
            total = total + word_field(w, base).scale(Fraction(c))
        return total

    # -- complete leaves ---------------------------------------------------

    def base_cert(self, name: str) -> CompletenessCertificate:
        if name not in self._base_certs:
            if name == "delta":
                self._base_certs[name] = lnd_certificate(self.std.delta)
            elif name == "deltaprime":
                self._base_certs[name] = lnd_certificate(self.std.delta_prime)
            elif name == "eps":
                self._base_certs[name] = diagonal_certificate(self.std.eps)
            else:
                raise KeyError(name)
        return self._base_certs[name]

    def leaf_base(self, name: str) -> int:
        return self.leaf(name, self.base_cert(name))

    def leaf_word(self, w: GeneratorWord, base_name: str) -> int:
        """Leaf f * mu with f a generator word; requires mu(mu(f)) = 0."""
        if w.degree() == 0:
            return self.leaf_base(base_name)
        cert = function_times_field_certificate(w.lift(), self.base_cert(base_name))
        return self.leaf(f"{w}*{base_name}", cert)

    def leaf_xb_delta(self, N: int) -> int:
        return self.leaf_word(self.word(N=N), "delta")

    def leaf_x0_eps(self, M: int) -> int:
        return self.leaf_word(self.word(M=M), "eps")

    # -- the iterated bracket chain ending in xb*eps -----------------------

    def idx_X(self, s: int) -> int:
        """X_1 = [delta, x0*eps], X_s = [delta, X_{s-1}]; the closed form is
        s*b(b-1)..(b-s+2) * x_{s-1}*delta + b(b-1)..(b-s+1) * x_s*eps."""
        b, std = self.b, self.std
        c1 = s * _falling(b, s - 1)
        c2 = _falling(b, s)
        claim = self.combo(
            (c1, self.word(h=s - 1) if s - 1 < b else self.word(N=1), std.delta),
            (c2, self.word(h=s) if s < b else self.word(N=1), std.eps),
        )
        prev = self.leaf_x0_eps(1) if s == 1 else self.idx_X(s - 1)
        return self.brk(("X", s), self.leaf_base("delta"), prev, claim, f"X_{s}")

    def idx_xb_eps(self) -> int:
        """Extract xb*eps from X_b and the complete leaf x_{b-1}*delta."""
        b = self.b
        key = ("xb_eps",)
        if key in self.cache:
            return self.cache[key]
        i_Xb = self.idx_X(b)
        i_leaf = self.leaf_word(self.word(h=b - 1) if b > 1 else self.word(M=1), "delta")
        claim = self.combo((1, self.word(N=1), self.std.eps))
        return self.lin(
            key,
            [i_Xb, i_leaf],
            [Fraction(1, factorial(b)), Fraction(-b)],
            claim,
            "xb*eps",
        )

    def idx_x0xb_eps(self) -> int:
        key = ("x0xb_eps",)
        if key in self.cache:
            return self.cache[key]
        b = self.b
        i = self.brk(
            ("brk_x0xb_eps",),
            self.leaf_x0_eps(1),
            self.idx_xb_eps(),
            self.combo((-b, self.word(M=1, N=1), self.std.eps)),
            "[x0*eps, xb*eps]",
        )
        claim = self.combo((1, self.word(M=1, N=1), self.std.eps))
        return self.lin(key, [i], [Fraction(-1, b)], claim, "x0*xb*eps")

    # -- the delta family x_k * xb^N * delta -------------------------------

    def idx_x0xb_delta(self) -> int:
        key = ("x0xb_delta",)
        if key in self.cache:
            return self.cache[key]
        b, std = self.b, self.std
        i_xbd = self.leaf_xb_delta(1)
        s1 = self.brk(
            ("s1",),
            self.leaf_x0_eps(1),
            i_xbd,
            self.combo(
                (-(1 + b), self.word(M=1, N=1), std.delta),
                (-b, self.word(h=1, N=1) if b > 1 else self.word(N=2), std.eps),
            ),
            "[x0*eps, xb*delta]",
        )
        s2 = self.brk(
            ("s2",),
            self.leaf_base("delta"),
            self.idx_x0xb_eps(),
            self.combo(
                (1, self.word(M=1, N=1), std.delta),
                (b, self.word(h=1, N=1) if b > 1 else self.word(N=2), std.eps),
            ),
            "[delta, x0*xb*eps]",
        )
        claim = self.combo((1, self.word(M=1, N=1), std.delta))
        return self.lin(
            key, [s1, s2], [Fraction(-1, b), Fraction(-1, b)], claim, "x0*xb*delta"
        )

    def idx_yxb_delta(self) -> int:
        """y*xb*delta via y*xb = (1 + x0)*x_{b-1} on the quotient."""
        key = ("yxb_delta",)
        if key in self.cache:
            return self.cache[key]
        b, std = self.b, self.std
        w_xbm1 = self.word(h=b - 1) if b > 1 else self.word(M=1)
        w_x0xbm1 = self.word(M=1, h=b - 1) if b > 1 else self.word(M=2)
        i_leaf = self.leaf_word(w_xbm1, "delta")
        t = self.brk(
            ("brk_x0xbm1",),
            self.leaf_x0_eps(1),
            i_leaf,
            self.combo(
                (-b, w_x0xbm1, std.delta),
                # x1*x_{b-1} and x0*xb are the same ambient monomial
                (-b, self.word(M=1, N=1), std.eps),
            ),
            "[x0*eps, x_{b-1}*delta]",
        )
        i_x0xbm1 = self.lin(
            ("x0xbm1_delta",),
            [t, self.idx_x0xb_eps()],
            [Fraction(-1, b), Fraction(-1)],
            self.combo((1, w_x0xbm1, std.delta)),
            "x0*x_{b-1}*delta",
        )
        claim = self.combo((1, self.word(N=1, ry=1), std.delta))
        return self.lin(
            key, [i_x0xbm1, i_leaf], [Fraction(1), Fraction(1)], claim, "y*xb*delta"
        )

    def idx_delta_word(self, k: int, N: int) -> int:
        """x_k * xb^N * delta for 0 <= k < b, N >= 1 (k = b is a leaf)."""
        b, n, std = self.b, self.n, self.std
        if k == b:
            return self.leaf_xb_delta(N + 1)
        if N < 1:
            if k == b - 1:
                return self.leaf_word(self.word(h=k) if k > 0 else self.word(M=1), "delta")
            raise UnsupportedTargetError(f"x{k}*delta is not a certified target")
        key = ("delta_word", k, N)
        if key in self.cache:
            return self.cache[key]
        if k == 0:
            if N == 1:
                idx = self.idx_x0xb_delta()
                self.cache[key] = idx
                return idx
            i_y = self.idx_yxb_delta()
            u = self.brk(
                ("brk_k0", N),
                self.leaf_xb_delta(N - 1),
                i_y,
                self.combo(
                    (1, self.word(N=N), std.delta),
                    (n, self.word(M=1, N=N), std.delta),
                ),
                f"[xb^{N - 1}*delta, y*xb*delta]",
            )
            claim = self.combo((1, self.word(M=1, N=N), std.delta))
            return self.lin(
                key,
                [u, self.leaf_xb_delta(N)],
                [Fraction(1, n), Fraction(-1, n)],
                claim,
                f"x0*xb^{N}*delta",
            )
        prev = self.idx_delta_word(k - 1, 1)
        u = self.brk(
            ("brk_delta_word", k, N),
            self.leaf_xb_delta(N - 1),
            prev,
            self.combo(((b - k + 1), self._xw(k, N), std.delta)),
            f"[xb^{N - 1}*delta, x{k - 1}*xb*delta]",
        )
        claim = self.combo((1, self._xw(k, N), std.delta))
        return self.lin(key, [u], [Fraction(1, b - k + 1)], claim, f"x{k}*xb^{N}*delta")

    def _xw(self, k: int, N: int, M: int = 0, ry: int = 0) -> GeneratorWord:
        """The word y^ry * x0^M * x_k * xb^N with index-0/index-b folding."""
        if k == self.b:
            return self.word(M=M, N=N + 1, ry=ry)
        if k == 0:
            return self.word(M=M + 1, N=N, ry=ry)
        return self.word(M=M, h=k, N=N, ry=ry)

    # -- the eps family x0^M * x_h * xb^N * eps ----------------------------

    def idx_xh_xb_eps(self, h: int, N: int) -> int:
        """x_h * xb^N * eps for 1 <= h <= b, N >= 1."""
        b, std = self.b, self.std
        key = ("xh_xb_eps", h, N)
        if key in self.cache:
            return self.cache[key]
        if N == 1:
            prev = self.idx_x0xb_eps() if h == 1 else self.idx_xh_xb_eps(h - 1, 1)
            u = self.brk(
                ("brk_xh_xb_eps", h, N),
                self.leaf_base("delta"),
                prev,
                self.combo(
                    (1, self._xw(h - 1, 1), std.delta),
                    (b - h + 1, self._xw(h, 1), std.eps),
                ),
                f"[delta, x{h - 1}*xb*eps]",
            )
            refs = [u, self.idx_delta_word(h - 1, 1)]
            scalars = [Fraction(1, b - h + 1), Fraction(-1, b - h + 1)]
        else:
            prev = self.idx_x0xb_eps() if h == 1 else self.idx_xh_xb_eps(h - 1, 1)
            u = self.brk(
                ("brk_xh_xb_eps", h, N),
                self.leaf_xb_delta(N - 1),
                prev,
                self.combo(
                    (1 + b * (N - 1), self._xw(h - 1, N), std.delta),
                    (b - h + 1, self._xw(h, N), std.eps),
                ),
                f"[xb^{N - 1}*delta, x{h - 1}*xb*eps]",
            )
            refs = [u, self.idx_delta_word(h - 1, N)]
            scalars = [
                Fraction(1, b - h + 1),
                Fraction(-(1 + b * (N - 1)), b - h + 1),
            ]
        claim = self.combo((1, self._xw(h, N), std.eps))
        return self.lin(key, refs, scalars, claim, f"x{h}*xb^{N}*eps")

    def idx_eps_word(self, M: int, h: int | None, N: int) -> int:
        """x0^M * x_h * xb^N * eps; h in {0, b} folds into M resp. N."""
        b, std = self.b, self.std
        if h == 0:
            M, h = M + 1, None
        elif h == b:
            N, h = N + 1, None
        key = ("eps_word", M, h, N)
        if key in self.cache:
            return self.cache[key]
        if h is None and N == 0:
            idx = self.leaf_x0_eps(M)  # falls back to the eps leaf for M = 0
            self.cache[key] = idx
            return idx
        if h is None:
            base = self.idx_xb_eps() if N == 1 else self.idx_xh_xb_eps(b, N - 1)
        else:
            if N == 0:
                raise UnsupportedTargetError(
                    f"x0^{M}*x{h}*eps without an xb factor is not a certified target"
                )
            base = self.idx_xh_xb_eps(h, N)
        if M == 0:
            self.cache[key] = base
            return base
        lam = (h or 0) + N * b
        u = self.brk(
            ("brk_eps_word", M, h, N),
            self.leaf_x0_eps(M),
            base,
            self.combo((-lam, self.word(M=M, h=h, N=N), std.eps)),
            f"[x0^{M}*eps, x{h if h is not None else 'b-word'}*xb^{N}*eps]",
        )
        claim = self.combo((1, self.word(M=M, h=h, N=N), std.eps))
        return self.lin(key, [u], [Fraction(-1, lam)], claim, f"x0^{M}*...*eps")

    # -- the y families ----------------------------------------------------

    def idx_ey(self, R: int) -> int:
        """y^(b+R) * eps from a bracket with a nilpotent leaf."""
        b, std = self.b, self.std
        key = ("ey", R)
        if key in self.cache:
            return self.cache[key]
        i_ydp = self.leaf_word(self.word(ry=R), "deltaprime")
        i_x0ydp = self.leaf_word(self.word(M=1, ry=R), "deltaprime")
        u = self.brk(
            ("brk_ey", R),
            self.leaf_x0_eps(1),
            i_ydp,
            self.combo(
                (b + R, self.word(M=1, ry=R), std.delta_prime),
                (-1, self.word(ry=b + R), std.eps),
            ),
            f"[x0*eps, y^{R}*deltaprime]",
        )
        claim = self.combo((1, self.word(ry=b + R), std.eps))
        return self.lin(
            key, [i_x0ydp, u], [Fraction(b + R), Fraction(-1)], claim, f"y^{b + R}*eps"
        )

    def idx_d(self, R: int, M: int, h: int | None, N: int) -> int:
        """y^(b+R) * x0^M * x_h * xb^N * eps."""
        b, std = self.b, self.std
        if h == 0:
            M, h = M + 1, None
        elif h == b:
            N, h = N + 1, None
        if M == 0 and h is None and N == 0:
            return self.idx_ey(R)
        key = ("d", R, M, h, N)
        if key in self.cache:
            return self.cache[key]
        i_ey = self.idx_ey(R)
        i_xe = self.idx_eps_word(M, h, N)
        # eps-eigenvalues: y^(b+R) has b+R, the x-word has -(h + N*b)
        coeff = -((h or 0) + N * b) - (b + R)
        u = self.brk(
            ("brk_d", R, M, h, N),
            i_ey,
            i_xe,
            self.combo((coeff, self.word(M=M, h=h, N=N, ry=b + R), std.eps)),
            f"[y^{b + R}*eps, x-word*eps]",
        )
        claim = self.combo((1, self.word(M=M, h=h, N=N, ry=b + R), std.eps))
        return self.lin(key, [u], [Fraction(1, coeff)], claim, "y^..*x-word*eps")

    # -- finishing ---------------------------------------------------------

    def finish(self, target_idx: int, claim: Derivation, label: str) -> MembershipScript:
        """Ensure the final step is the target field."""
        last = self.steps[-1]
        if target_idx == len(self.steps) - 1 and last.field == claim:
            return MembershipScript(self.params, self.steps)
        self.lin(("final",), [target_idx], [Fraction(1)], claim, label)
        return MembershipScript(self.params, self.steps)


# -- public planners -------------------------------------------------------


def plan_delta_target(word: GeneratorWord, params: SurfaceParameters) -> MembershipScript:
    """Script for lift(word) * delta, word of the shape x_k * xb^N."""
    if word.ry or word.rz:
        raise UnsupportedTargetError("delta targets must be pure x-words")
    b = params.b
    indices = word.x_indices()
    non_b = [i for i in indices if i < b]
    if len(non_b) > 1:
        raise UnsupportedTargetError(
            f"{word} * delta is outside the x_k*xb^N family"
        )
    builder = _Builder(params)
    k = non_b[0] if non_b else b
    N = len(indices) - len(non_b) - (1 if k == b else 0)
    idx = builder.idx_delta_word(k, N)
    claim = word_field(word, builder.std.delta)
    return builder.finish(idx, claim, f"{word}*delta")


def plan_eps_target(word: GeneratorWord, params: SurfaceParameters) -> MembershipScript:
    """Script for lift(word) * eps.

    z-powers are eliminated by binomial expansion; each z-free branch is
    rewritten to x0^M * x_h * xb^N shape and routed through the matching
    family.  Branch words must have y-exponent 0 or at least b.
    """
    builder = _Builder(params)
    b = params.b
    refs: list[int] = []
    scalars: list[Fraction] = []
    for c, u in eliminate_z(word):
        nf = x_normal_form(GeneratorWord(0, 0, u.xs, params))
        if u.ry == 0:
            idx = builder.idx_eps_word(nf.M, nf.h, nf.N)
        elif u.ry >= b:
            idx = builder.idx_d(u.ry - b, nf.M, nf.h, nf.N)
        else:
            raise UnsupportedTargetError(
                f"y^{u.ry}*eps with 0 < {u.ry} < b is not a certified target"
            )
        refs.append(idx)
        scalars.append(c)
    claim = word_field(word, builder.std.eps)
    if len(refs) == 1 and scalars[0] == 1:
        return builder.finish(refs[0], claim, f"{word}*eps")
    builder.lin(("final",), refs, scalars, claim, f"{word}*eps")
    return MembershipScript(params, builder.steps)


def plan_module_element(
    coeff_word: GeneratorWord, params: SurfaceParameters
) -> MembershipScript:
    """Script for coeff_word * (x0*x1*...*xb*y^b) * eps."""
    return plan_eps_target(coeff_word.times(module_generator_word(params)), params)


def plan_membership(
    word: GeneratorWord, base: str, params: SurfaceParameters
) -> MembershipScript:
    """Dispatch on the base field name ('delta' or 'eps')."""
    if base == "delta":
        return plan_delta_target(word, params)
    if base == "eps":
        return plan_eps_target(word, params)
    raise UnsupportedTargetError(f"no certified families over base field {base!r}")
