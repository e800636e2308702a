"""Closed-form waveguide-pair evolution coefficients for the second-harmonic
mode of the system waveguide in a two-waveguide (both quadratically nonlinear)
coupler, exact to second order in the nonlinear couplings.

Generated by symbolic integration of the coefficient ODEs; do not edit by
hand.  Validated against direct numerical integration in the test suite.
"""

import numpy as np


def second_harmonic_l_coefficients(k, dka, dkb, gamma_a, gamma_b, z):
    """Return the fourteen l coefficients of the system second-harmonic mode.

    k: complex linear coupling; dka/dkb: real phase mismatches of the probe
    and system waveguides; gamma_a/gamma_b: complex nonlinear couplings;
    z: interaction length.  l1 = 1 identically.
    """
    kap = abs(k)
    kc = np.conj(k)
    Ga = gamma_a
    Gac = np.conj(gamma_a)
    Gb = gamma_b
    Gbc = np.conj(gamma_b)
    x0 = 1/dkb
    x1 = 1j*z
    x2 = np.exp(dkb*x1)
    x3 = x0*x2
    x4 = 2*x3
    x5 = 2*kap
    x6 = dkb + x5
    x7 = dkb*x6
    x8 = dkb - x5
    x9 = 4*kap
    x10 = 1/x8
    x11 = 1/x6
    x12 = x10*x11
    x13 = x0*x12
    x14 = np.exp(x1*x8)
    x15 = x10*x14
    x16 = x11*np.exp(x1*x6)
    x17 = x15 + x16
    x18 = (1/4)*Gb
    x19 = 1/kap
    x20 = (1/2)*x19
    x21 = x15*x20
    x22 = x16*x20
    x23 = Gb*k
    x24 = k**2
    x25 = kap**2
    x26 = 1/x25
    x27 = dkb + kap
    x28 = x27**2
    x29 = -x28
    x30 = x25 + x29
    x31 = 1/x30
    x32 = x1*x5
    x33 = np.exp(-x32)
    x34 = x27*x31*x33
    x35 = x20*x34
    x36 = -kap
    x37 = dkb + x36
    x38 = x37**2
    x39 = x25 - x38
    x40 = 1/x39
    x41 = x20*x40
    x42 = x37*np.exp(x32)
    x43 = x41*x42
    x44 = x30*x37
    x45 = x27*x39
    x46 = x44 + x45
    x47 = x31*x40
    x48 = x46*x47
    x49 = kap*x30
    x50 = kap*x39 + x49
    x51 = x46 + x50
    x52 = (1/2)*x47
    x53 = -x45
    x54 = -x44 + x50 + x53
    x55 = x16*x52
    x56 = kap*x7
    x57 = x51*x56
    x58 = x45*x7
    x59 = x5*x6
    x60 = -x37
    x61 = x30*x60
    x62 = x6*x61
    x63 = x60**2
    x64 = x25 - x63
    x65 = kap*x64
    x66 = x27*x64
    x67 = x61 - x66
    x68 = x49 + x65 + x67
    x69 = kap*x68 - x62
    x70 = x13*x31*x41
    x71 = Gb*Gbc
    x72 = k*kc
    x73 = -x25 + x72
    x74 = x40*x42
    x75 = x29 + x63
    x76 = -x75
    x77 = kap*x46 + x72*x76
    x78 = x61 + x66
    x79 = -x49 + x65 + x78
    x80 = -x79
    x81 = x25*x51 + x72*x80
    x82 = x19*x47
    x83 = x49 - x65 + x78
    x84 = -x83
    x85 = (1/2)*x26
    x86 = x74*x85
    x87 = 2*x25
    x88 = -x87
    x89 = x28 + x38 + x88
    x90 = x3*x47
    x91 = x44 + x53
    x92 = x1*x19*x47
    x93 = x21*x47
    x94 = x22*x47
    x95 = x6*x87
    x96 = x13*x47*x85
    x97 = x66*x7
    x98 = kap*x84 + x62
    x99 = x19*x71
    x100 = -dka + x6
    x101 = dka + x36
    x102 = x101**2
    x103 = -x102 + x25
    x104 = 1/x103
    x105 = 1/x100
    x106 = x104*x105
    x107 = k*x106*np.exp(x1*x100)
    x108 = dka - dkb
    x109 = x108 + x5
    x110 = 1/x109
    x111 = dka + kap
    x112 = x111**2
    x113 = -x112
    x114 = x113 + x25
    x115 = 1/x114
    x116 = np.exp(-x1*x109)
    x117 = x112 + x88
    x118 = x102 + x117
    x119 = k*x115
    x120 = x104*x119
    x121 = x118*x120
    x122 = 1/x108
    x123 = np.exp(-x1*x108)
    x124 = x122*x123
    x125 = x121*x124
    x126 = x118*x72
    x127 = x103*x111
    x128 = kap*x127
    x129 = x101*x114
    x130 = kap*x129
    x131 = x128 + x130
    x132 = x126 + x131
    x133 = 1/kc
    x134 = x104*x115
    x135 = x133*x134
    x136 = (1/2)*x135
    x137 = x136*x16
    x138 = k*kc*x118 - x131
    x139 = x136*x15
    x140 = x100*x108
    x141 = x140*x7
    x142 = x109*x141
    x143 = 2*x72
    x144 = x103*x141*x143
    x145 = x100*x118
    x146 = 2*x6
    x147 = x108*x146
    x148 = x146*x72
    x149 = Gac*Gb
    x150 = x110*x116*x119
    x151 = x150*x19
    x152 = x107*x19
    x153 = -x101
    x154 = x153**2
    x155 = x113 + x154
    x156 = -x155
    x157 = x114*x153
    x158 = -x154 + x25
    x159 = x111*x158
    x160 = x157 - x159
    x161 = x133*x3
    x162 = x135*x22
    x163 = kap*x157
    x164 = kap*x159
    x165 = x117 + x154
    x166 = x165*x72
    x167 = -x109
    x168 = -x108
    x169 = x100*x168
    x170 = x169*x7
    x171 = x167*x170
    x172 = x143*x158*x170
    x173 = -x160
    x174 = x169*x59
    x175 = x114*x168
    x176 = x100*x155
    x177 = x122*x13
    x178 = x106*x110*x115*x133*x177
    x179 = x178*x20
    x180 = Gac*x23
    x181 = -x102 - x113
    x182 = x124*x181
    x183 = x156*x72
    x184 = x126 - x129*x5
    x185 = (1/4)*x133
    x186 = x155*x72
    x187 = x180*x19
    x188 = x128 - x130 + x183
    x189 = x163 + x164
    x190 = x186 + x189
    x191 = x157 + x159
    l2 = x18*(-x13*(x7 + x8*(3*dkb + x9)) + x17 + x4)
    l3 = x23*(2*x12 - x21 + x22)
    l4 = x18*x24*x26*(-x13*(x7 - x8*(dkb + x9)) + x17 - x4)
    l5 = x71*(x1*x48 - x15*x51*x52 - x3*x48 - x35 + x43 + x54*x55 + x70*(x57 - x8*(dkb*x69 - x46*x59 - x58)))
    l6 = Gbc*x18*x19*(x0*x10*x11*x26*x31*x40*(x56*x81 + x8*(-dkb*(kap*(x25*x68 + x72*x84) + x62*x73) + 2*x25*x6*x77 - x58*x73)) - x15*x81*x82 - x16*x82*(-x25*x54 + x72*x83) + 2*1j*x19*x31*x40*x46*z*(x25 + x72) + x26*x27*x31*x33*x73 - x26*x73*x74 - x4*x47*x77)
    l7 = Gbc*x23*(x34*x85 + x51*x93 + x54*x94 + x86 + x89*x90 - x91*x92 - x96*(x57 + x8*(dkb*x69 + x58 + x89*x95)))
    l8 = kc*x99*(x0*x2*x31*x40*x91 + (1/2)*x10*x14*x31*x40*x80 + 1j*x31*x40*x78*z - x35 - x43 - x55*x83 - x70*(x56*x80 + x8*(dkb*x98 - x59*x78 - x97)))
    l9 = x72*x99*((1/2)*x26*x27*x31*x33 - x67*x92 - x76*x90 - x80*x93 - x83*x94 - x86 - x96*(x56*x79 + x8*(dkb*x98 + x75*x95 + x97)))
    l10 = x149*(k*x110*x115*x116 + (1/2)*x0*x10*x104*x105*x11*x110*x115*x122*x133*(x138*x142 + x8*(x109*(dkb*(x132*x140 + x148*(x108*x114 + x145)) + x145*x147*x72) - x144)) - x107 - x121*x3 - x125 - x132*x137 - x138*x139)
    l11 = x180*(k*x104*x115*x122*x123*x156*x19 + (1/2)*x10*x104*x115*x133*x138*x14*x19 - x132*x162 - x134*x160*x161 - x151 - x152 - x179*(x171*(x163 - x164 + x166) - x8*(x167*(dkb*(x148*(x175 - x176) - x169*(x163 - x164 - x166)) - x173*x174) - x172)))
    l12 = x134*x187*(k*x182 + x15*x185*(x181*x72 + x184) - x16*x185*(x126 + x127*x5 - x183) - 1/2*x161*(kap*x160 - x183) + x177*x185*(-x108*x7*(x183 + x184) + x8*(dkb*(-x168*(x159*x5 + x166 + x186) + 4*x186*x6) + x147*(-kap*x173 + x186))))
    l13 = x187*(x107 + x120*x181*x3 + x120*x182 - x137*(x128 - x130 - x183) + x139*x188 + x150 - 1/2*x178*(x142*x188 + x8*(x109*(-dkb*(x140*x190 + x148*(x175 + x176)) + 2*k*kc*x100*x108*x156*x6) + x144)))
    l14 = x149*x19*x24*(x0*x104*x115*x133*x191*x2 - 1/2*x10*x104*x115*x133*x14*x188*x19 - x125*x19 - x151 + x152 - x162*x190 - x179*(x171*(k*kc*x155 - x189) - x8*(x167*(dkb*(x100*x168*x190 - x148*(x100*x165 + x175)) - x174*x191) - x172)))
    one = np.ones_like(np.asarray(z, dtype=complex))
    return (one, l2, l3, l4, l5, l6, l7, l8, l9, l10, l11, l12, l13, l14)
