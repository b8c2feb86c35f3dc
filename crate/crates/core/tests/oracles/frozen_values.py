"""Independent 40-digit reference values for the frozen numbers in the Rust tests.

Run with `python3 frozen_values.py` (needs mpmath).
"""
from mpmath import mp, mpf, sqrt, pi

mp.dps = 40
tp = 2 * pi
c = mpf(299792458)
hbar = mpf("1.054571817e-34")

# MnF2
wE = tp * mpf("9.3e12")
wp = tp * mpf("0.15e12")
K = mpf("0.007")
density = mpf("1e28")

r = (wE + wp) / sqrt(wp * (2 * wE + wp))
U = sqrt(r + 1) / sqrt(2)
V = -sqrt(r - 1) / sqrt(2)
x = wp / (2 * wE)
print("U", U)
print("V", V)
print("U+V", U + V)
print("kappa_alpha", x ** mpf("0.25") + K * x ** mpf("-0.25"))
print("kappa_beta", x ** mpf("0.25") - K * x ** mpf("-0.25"))
print("zero-field resonance / 2pi", sqrt(2 * wE * wp) / tp)

SLOPE = mpf("25e-3") / sqrt(mpf("1e9"))


def g(f_e, volume):
    g0 = tp * SLOPE * sqrt(f_e)
    return g0 * (wp / (8 * wE)) ** mpf("0.25") * sqrt(2 * density * volume)


def g_calibrated(kappa, volume_mm3):
    return tp * mpf("0.1e6") * kappa / sqrt(mpf("1e9") * volume_mm3)


def with_cavity(c_em, c_om, eta_e=mpf("0.5"), eta_o=mpf("0.5")):
    return eta_o * eta_e * 4 * c_om * c_em / (1 + c_om + c_em) ** 2


print("g / 2pi, 20 GHz, (0.1 mm)^3", g(mpf("20e9"), mpf("1e-12")) / tp)
print("g / 2pi, 20 GHz, 1 um film", g(mpf("20e9"), mpf("1e-14")) / tp)
print("g / 2pi, 250 GHz, (0.1 mm)^3", g(mpf("250e9"), mpf("1e-12")) / tp)

# Single mode at 20 GHz: kappa_e = kappa_o = 2pi 200 MHz, gamma = 2pi 100 MHz.
ke = ko = tp * mpf("200e6")
gam = tp * mpf("100e6")
gb = g(mpf("20e9"), mpf("1e-12"))
zb = g_calibrated(mpf("0.4"), mpf("1e-3")) * 1000
c_em = 4 * gb**2 / (ke * gam)
c_om = 4 * zb**2 / (ko * gam)
print("eta single mode", with_cavity(c_em, c_om))
print("eta single mode, Faraday x0.01", with_cavity(c_em, c_om * mpf("1e-4")))

# Two degenerate modes at 250 GHz, full quadruple resonance.
ke = tp * mpf("1000e6")
ko = tp * mpf("200e6")
gam = tp * mpf("1000e6")
G = tp * mpf("10e6")
za = tp * mpf("50e3")
zb = tp * mpf("40e3")
ce, ca, cb, co = ke / 2, gam / 2, gam / 2, ko / 2
num = sqrt(ke / 2) * sqrt(ko / 2) * (zb * G / cb + za * G / ca)
den = (zb**2 / cb * ce + za**2 / ca * ce + ce * co + (za * G - zb * G) ** 2 / (ca * cb)
       + G**2 / cb * co + G**2 / ca * co)
print("eta two modes", (num / den) ** 2)

# Itinerant light, 1 um film, xi / 2pi = 2.1e-7 Hz.
gn = g(mpf("20e9"), mpf("1e-14"))
c_em = 4 * gn**2 / (tp * mpf("200e6") * tp * mpf("100e6"))
eta_m = mpf("2.1e-7") / mpf("100e6")
print("eta no cavity", mpf("0.5") * eta_m * 4 * c_em / (1 + c_em) ** 2)

Gb = g_calibrated(mpf("0.4"), mpf("1e-5"))
xi = Gb**2 * (mpf("1e-6") / c) ** 2 * mpf("0.015") / (hbar * tp * mpf("193e12"))
print("xi / 2pi from the drive-flux formula, 1 um", xi / tp)


# Thickness laws (d in mm): g = 10.5 sqrt(d) MHz, zeta = 1.3e-2 / sqrt(d) MHz.
def law_eta(d_mm, layers=1):
    gg = tp * mpf("10.5e6") * sqrt(d_mm)
    zz = tp * mpf("1.3e-2") * mpf("1e6") / sqrt(d_mm)
    rate = tp * mpf("200e6") * tp * mpf("100e6")
    return with_cavity(4 * gg**2 * layers / rate, 4 * zz**2 * layers / rate)


print("optimal thickness (mm)", mpf("1.3e-2") / mpf("10.5"))
print("eta, 1 um layer", law_eta(mpf("1e-3")))
print("eta, 5000 x 1 um layers", law_eta(mpf("1e-3"), 5000))
for n in [10, 50, 89, 90, 100]:
    print("N^2 law deviation at N =", n, law_eta(mpf("1e-3"), n) / law_eta(mpf("1e-3")) / n**2 - 1)

theta_yig = mpf(20) * pi / 180 * 1000
print("G_FM / 2pi, YIG (0.1 mm)^3", c * theta_yig / (4 * sqrt(5)) / sqrt(2 * mpf("2.1e28") * mpf("1e-12")) / tp)
