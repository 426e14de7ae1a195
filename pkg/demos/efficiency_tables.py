"""
Efficiency cost of robustness
=============================

Asymptotic relative efficiency (MLE variance over MDPDE variance) per
parameter, as alpha grows. The exponential column is parameter-free;
the others are computed by quadrature at representative settings.
"""

from dpdfit import EXPONENTIAL, GAMMA, LOGNORMAL, WEIBULL, ParamVector, are

SETTINGS = [
    (EXPONENTIAL, (1.0,)),
    (GAMMA, (5.0, 0.05)),
    (GAMMA, (10.0, 0.05)),
    (WEIBULL, (2.0, 0.01)),
    (WEIBULL, (4.0, 0.01)),
    (LOGNORMAL, (5.0, 0.2)),
    (LOGNORMAL, (5.0, 0.4)),
]

header = None
for family, values in SETTINGS:
    table = are(family, ParamVector(family, values))
    if header is None:
        header = "setting".ljust(26) + "param".ljust(10)
        header += "".join(f"a={a:<6g}" for a in sorted(table.rows))
        print(header)
    for j, name in enumerate(family.param_names):
        cells = "".join(f"{table.rows[a][j]:<8.4f}" for a in sorted(table.rows))
        print(f"{family.tag}{values!r:<{26 - len(family.tag)}}{name:<10}{cells}")

print("\nEvery entry is 1 at alpha = 0 by definition and decreases as the")
print("estimator buys robustness; around 25-30% of efficiency is gone by")
print("alpha = 0.5 and roughly half by alpha = 1.")
