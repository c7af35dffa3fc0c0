"""Reference values, transcribed as printed."""
from fractions import Fraction as F

# Inverse eigenvector matrix for d = 10, rows by storage index 0..10.
PINV10_ROWS = [
    [1],
    [0, 1],
    [0, 1, 1],
    [0, F(1, 2), F(3, 2), 1],
    [0, F(2, 11), F(13, 11), 2, 1],
    [0, F(1, 19), F(25, 38), F(40, 19), F(5, 2), 1],
    [0, F(132, 10411), F(3004, 10411), F(45, 29), F(95, 29), 3, 1],
    [0, F(90, 34399), F(3626, 34399), F(61607, 68798), F(245, 82), F(385, 82), F(7, 2), 1],
    [0, F(15984, 33846961), F(12351860, 372316571), F(7924, 18469), F(39221, 18469),
     F(56, 11), F(70, 11), 4, 1],
    [0, F(983304, 12980789207), F(119432466, 12980789207), F(2296176994, 12980789207),
     F(536193, 429266), F(919821, 214633), F(567, 71), F(588, 71), F(9, 2), 1],
    [0, F(1345248918720, 123031432784730871), F(281136722386176, 123031432784730871),
     F(4358731100, 67808366729), F(42780833020, 67808366729), F(1335075, 448471),
     F(3478503, 448471), F(1050, 89), F(930, 89), 5, 1],
]

# Printed roots of p_d, in printed order (the d = 6 row is not sorted).
P_ROOTS = {
    2: [-1],
    3: [-2, -1],
    4: [-4.1861, -1.3139, -1],
    5: [-8.3642, -2, -1.1358, -1],
    6: [-16.096, -1.4706, -3.1252, -1.0662, -1],
    7: [-30.121, -4.8761, -2, -1.2570, -1.0343, -1],
    8: [-55.208, -7.5398, -2.7664, -1.5661, -1.1529, -1.0185, -1],
    9: [-99.626, -11.537, -3.8404, -2, -1.3521, -1.0949, -1.0101, -1],
    10: [-177.68, -17.474, -5.3206, -2.5830, -1.6317, -1.2315, -1.0607, -1.0057, -1],
}

# Printed p-root strings, kept verbatim to recover the printed precision.
P_ROOTS_TEXT = {
    4: ["-4.1861", "-1.3139", "-1"],
    5: ["-8.3642", "-2", "-1.1358", "-1"],
    6: ["-16.096", "-1.4706", "-3.1252", "-1.0662", "-1"],
    7: ["-30.121", "-4.8761", "-2", "-1.2570", "-1.0343", "-1"],
    8: ["-55.208", "-7.5398", "-2.7664", "-1.5661", "-1.1529", "-1.0185", "-1"],
    9: ["-99.626", "-11.537", "-3.8404", "-2", "-1.3521", "-1.0949", "-1.0101", "-1"],
    10: ["-177.68", "-17.474", "-5.3206", "-2.5830", "-1.6317", "-1.2315", "-1.0607", "-1.0057", "-1"],
}

Q_ROOTS = {
    2: [-1, 0],
    3: [-1, -.5, 0],
    4: [-1, -.76112, -.23888, 0],
    5: [-1, -.88044, -.5, -.11956, 0],
    6: [-1, -.93787, -.68002, -.31998, -.06213, 0],
    7: [-1, -.96680, -.79492, -.5, -.20508, -.03320, 0],
    8: [-1, -.98189, -.86737, -.63852, -.36148, -.13263, -.01811, 0],
    9: [-1, -.98996, -.91332, -.73961, -.5, -.26039, -.08668, -.01004, 0],
    10: [-1, -.99437, -.94277, -.81205, -.61285, -.38715, -.18795, -.05723, -.00563, 0],
}


def padded(row, n=11):
    return [F(x) for x in row] + [F(0)] * (n - len(row))
