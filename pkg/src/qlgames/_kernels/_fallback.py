"""Pure-numpy implementations of the hot kernels.

These are the reference semantics for the compiled extension in
``_native.pyx``.  The simulator kernels transform a pre-drawn block of
uniforms into per-round outcome arrays using only comparisons and table
lookups, so the compiled and fallback paths are bit-identical.  The
payoff surface uses vectorized trig and agrees with the compiled path to
a few ulp.

Conventions shared by both backends:

* angles are radians here (degrees are converted at the public API),
* ``uniforms`` has shape (rounds, 4); column order is the documented
  draw order (context, question, position, risk),
* cumulative-probability arrays end with an exact 1.0 and are sampled
  with the "count of entries <= u" rule.
"""

import numpy as np

# quadrangle geometry: vertices 1-2-3-4 in a cycle, opposite(k) = k+2 mod 4
_OPPOSITE = np.array([0, 3, 4, 1, 2], dtype=np.int8)
# padded to question range 0..9 so masked vector lookups stay in bounds
_OPPOSITE10 = np.array([0, 3, 4, 1, 2, 0, 0, 0, 0, 0], dtype=np.int8)

# spin-1 question -> measurement context (0: the 0/1/3 basis, 1: the 0/2/4 basis)
_QCONTEXT = np.array([0, 0, 1, 0, 1, 0, 0, 1, 0, 1], dtype=np.int8)
# atom revealed by a negative answer to a disjunction question 5..9
_PLANE_CATCH = np.array([-1, -1, -1, -1, -1, 0, 3, 4, 1, 2], dtype=np.int8)
# vertices of each context, in cumulative-draw order
_ZPOS = np.array([0, 1, 3], dtype=np.int8)
_TPOS = np.array([0, 2, 4], dtype=np.int8)


def payoff_surface_half(a, b, c, d, tha, thb, alphas, betas):
    """Expected-payoff surface F over an (alphas x betas) grid, radians."""
    al = np.asarray(alphas, dtype=np.float64)[:, None]
    be = np.asarray(betas, dtype=np.float64)[None, :]
    return (
        a * np.cos(al) ** 2 * np.sin(be) ** 2
        + c * np.sin(al) ** 2 * np.cos(be) ** 2
        + b * np.cos(al - tha) ** 2 * np.sin(be - thb) ** 2
        + d * np.sin(al - tha) ** 2 * np.cos(be - thb) ** 2
    )


def quantum_half_rounds(p1, p2, q1, q2, a, b, c, d, uniforms):
    """Born-sampled rounds of the four-corner game.

    p1/p2 are Alice's conditional question weights inside the 1-3 and 2-4
    contexts, q1/q2 Bob's conditional position weights.  Returns
    (payoff, context, question, position, answer) arrays; answer is 1 for
    "yes".  The risk column of ``uniforms`` is drawn but unused here.
    """
    u = np.asarray(uniforms, dtype=np.float64)
    ctx = (u[:, 0] >= 0.5).astype(np.int8)  # 0: context 1-3, 1: context 2-4
    question = np.where(
        ctx == 0,
        np.where(u[:, 1] < p1, 1, 3),
        np.where(u[:, 1] < p2, 2, 4),
    ).astype(np.int8)
    position = np.where(
        ctx == 0,
        np.where(u[:, 2] < q1, 1, 3),
        np.where(u[:, 2] < q2, 2, 4),
    ).astype(np.int8)
    answer = (position == question).astype(np.int8)
    paytab = np.array([0.0, a, b, c, d])
    payoff = np.where(answer == 1, 0.0, paytab[question])
    return payoff, ctx, question, position, answer


def mechanical_half_rounds(base_cdf, policy_cdf, a, b, c, d, uniforms):
    """Rounds with an explicit ball and the adjacency reaction rule.

    The ball is placed by ``base_cdf`` (cumulative over vertices 1..4),
    the question drawn from ``policy_cdf``.  A question adjacent to the
    ball moves it; the opposite vertex is caught.  Returns
    (payoff, question, position, answer, final_position).
    """
    u = np.asarray(uniforms, dtype=np.float64)
    base = np.asarray(base_cdf, dtype=np.float64)
    pol = np.asarray(policy_cdf, dtype=np.float64)
    position = (np.minimum(np.searchsorted(base, u[:, 2], side="right"), 3) + 1).astype(np.int8)
    question = (np.minimum(np.searchsorted(pol, u[:, 1], side="right"), 3) + 1).astype(np.int8)
    caught = position == _OPPOSITE[question]
    answer = (~caught).astype(np.int8)
    final_position = np.where(caught, position, question).astype(np.int8)
    paytab = np.array([0.0, a, b, c, d])
    payoff = np.where(caught, paytab[question], 0.0)
    return payoff, question, position, answer, final_position


def quantum_one_rounds(qcdf, zcdf, tcdf, u_pay, v_pay, risk_always, uniforms):
    """Born-sampled rounds of the five-vertex game with the two-question rule.

    qcdf: cumulative weights for the first question 0..9.  zcdf/tcdf:
    Bob's cumulative conditional position weights in the 0/1/3 and 0/2/4
    contexts.  Returns (payoff, first, second, position, answer1, answer2)
    with second/answer2 set to -1 when no second question is asked.
    """
    u = np.asarray(uniforms, dtype=np.float64)
    n = u.shape[0]
    qcdf = np.asarray(qcdf, dtype=np.float64)
    zcdf = np.asarray(zcdf, dtype=np.float64)
    tcdf = np.asarray(tcdf, dtype=np.float64)
    u_pay = np.asarray(u_pay, dtype=np.float64)
    v_pay = np.asarray(v_pay, dtype=np.float64)

    first = np.minimum(np.searchsorted(qcdf, u[:, 1], side="right"), 9).astype(np.int8)
    in_t = _QCONTEXT[first] == 1
    zidx = np.minimum(np.searchsorted(zcdf, u[:, 2], side="right"), 2)
    tidx = np.minimum(np.searchsorted(tcdf, u[:, 2], side="right"), 2)
    position = np.where(in_t, _TPOS[tidx], _ZPOS[zidx]).astype(np.int8)

    is_atom = first <= 4
    # atom answer: vertex 0 only matches itself; a corner answers yes
    # unless the ball is at 0 or at the opposite corner
    atom_yes = np.where(
        first == 0, position == 0, (position != 0) & (position != _OPPOSITE10[first])
    )
    plane_yes = position != _PLANE_CATCH[first]
    answer1 = np.where(is_atom, atom_yes, plane_yes).astype(np.int8)

    payoff = np.zeros(n)
    second = np.full(n, -1, dtype=np.int8)
    answer2 = np.full(n, -1, dtype=np.int8)

    plane_no = ~is_atom & (answer1 == 0)
    payoff[plane_no] = v_pay[_PLANE_CATCH[first[plane_no]]]

    atom_no = is_atom & (answer1 == 0)
    if not risk_always:
        payoff[atom_no] = u_pay[first[atom_no]]
    else:
        # corner first question: the risky follow-up asks vertex 0
        corner = atom_no & (first != 0)
        second[corner] = 0
        a2 = position[corner] == 0
        answer2[corner] = a2.astype(np.int8)
        pay_c = np.where(a2, 0.0, v_pay[position[corner]])
        payoff[corner] = pay_c
        # question-0 first: follow-up drawn uniformly from the corners
        zero = atom_no & (first == 0)
        sec = (1 + (u[zero, 3] * 4.0).astype(np.int64)).astype(np.int8)
        second[zero] = sec
        caught2 = position[zero] == _OPPOSITE[sec]
        answer2[zero] = (~caught2).astype(np.int8)
        payoff[zero] = np.where(caught2, v_pay[position[zero]], 0.0)

    return payoff, first, second, position, answer1, answer2
