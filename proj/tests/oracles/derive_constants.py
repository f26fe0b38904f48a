"""Reference values for the constants, via mpmath's Clausen function."""
import json

import mpmath as mp

mp.mp.dps = 60
G = mp.clsin(2, mp.pi / 3)
gp = 1 / (2 * mp.root(3 * (2 - mp.sqrt(3)), 4))
gm = 1 / (2 * mp.root(3 * (2 + mp.sqrt(3)), 4))
values = {
    "G": G,
    "abs_V": G / 8,
    "c": mp.sqrt(G / 4),
    "alpha": 4 * mp.pi**2 / G,
    "gamma_plus": gp,
    "gamma_minus": gm,
    "A0": gp + gm,
    "A1": gp - gm,
}
print(json.dumps({k: mp.nstr(v, 50, strip_zeros=False) for k, v in values.items()}, indent=2))
