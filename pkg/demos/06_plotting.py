# coding: utf-8

# # Scatter plots with a fitted curve
#
# The SVG writer is deterministic, so the same data always gives the same bytes.

import tempfile
from pathlib import Path

from newsort_lab import paper_fixture, polyfit
from newsort_lab.svgplot import scatter_svg

fx = paper_fixture(1)
fit = polyfit(fx.grid, fx.printed_means, 4)
svg = scatter_svg(fx.grid, fx.printed_means, xlabel="k", ylabel="mean time (s)",
                  title="discrete uniform keys, n = 20000", curve=fit)
path = Path(tempfile.mkdtemp()) / "table1.svg"
path.write_text(svg)
print(path, len(svg), "bytes")
