# coding: utf-8

# # Polynomial fits and the dependence verdict
#
# `polyfit` solves least squares by QR on a rescaled Vandermonde matrix.
# `select_degree` keeps the lowest degree whose adjusted R^2 is within 0.005
# of the best. `dependence_verdict` says Flat when even that fit explains
# less than 80% of the variance.

from newsort_lab import dependence_verdict, paper_fixture, polyfit, select_degree
from newsort_lab.regression import format_fit_report

# The bundled tables hold the published per-trial times and printed means.

fx = paper_fixture(2)
for g, m in zip(fx.grid, fx.printed_means):
    print(g, m)

fit = polyfit(fx.grid, fx.printed_means, 2)
print("degree 2 R^2", round(fit.r_squared, 4))
print("auto degree", select_degree(fx.grid, fx.printed_means)[0])

# Mean times on the normal tables show no clear pattern in either parameter.

for table_id in (6, 7):
    fx = paper_fixture(table_id)
    print(table_id, dependence_verdict(fx.grid, fx.printed_means))

fx = paper_fixture(4)
fit = polyfit(fx.grid, fx.printed_means, 4)
print(format_fit_report(fit, dependence_verdict(fx.grid, fx.printed_means)))
