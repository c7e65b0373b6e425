"""Frozen values transcribed from the published examples.

Polynomials are kept as sympy-parsable strings exactly as printed, so the
comparison goes through an independent parser rather than our own printer.
"""

G2_U = {
    1: "2/3*(2*x2*x3 + x1*x4 + 2*x2*x4 + 2*x3*x5 + x5*x7)",
    2: "2/3*(-x1*x3 - x2*x3 - x1*x4 + 2*x3*x6 + x6*x7)",
    3: "2/3*(-x1*x2 + x2**2 - x3*x4 - x4**2 - x1*x5 - x2*x6)",
    4: "2/3*(-x1**2 - x1*x2 + x3**2 + x3*x4)",
    5: "2/3*(-x1*x3 - 2*x1*x7 - x6*x7)",
    6: "2/3*(-x2*x3 - 2*x2*x7 - x5*x7)",
    7: "2/3*(x1*x5 + x2*x6 + 2*x5*x6)",
}

SPIN7_U = {
    1: "-4/3*x7*x8",
    2: "2/3*(x4**2 + x3*x5 + x4*x6 - x6**2)",
    3: "-4/3*x2*x5",
    4: "2/3*(-x2*x4 - 2*x2*x6 - x5*x7 + 2*x6*x8)",
    5: "2/3*(x2*x3 + 2*x4*x7 + x6*x7)",
    6: "2/3*(x2*x4 + x2*x6 + x5*x7 - x4*x8)",
    7: "2/3*(-x4*x5 - 2*x5*x6 + x1*x8)",
    8: "2/3*(-x4*x6 + x1*x7)",
}

# reconstructed metric for rho(so(3)), computed in print from the printed A3
IKEMAKHEN_U = {
    1: "-2/3*(x3**2 + 4*x4**2 + x5**2)",
    2: "2*sqrt(3)/3*(x3**2 - x5**2)",
    3: "2/3*(x1*x3 - sqrt(3)*x2*x3 - 3*x4*x5 - x5**2)",
    4: "8/3*x1*x4",
    5: "2/3*(x1*x5 + sqrt(3)*x2*x5 + 3*x3*x4 + x3*x5)",
}

# terms contributed by the stray E35 in the printed A3 (printed minus corrected)
IKEMAKHEN_A3_TYPO_TERMS = {3: "-2/3*x5**2", 5: "2/3*x3*x5"}

DIM_P_G2 = 64
DIM_P_SPIN7 = 112
