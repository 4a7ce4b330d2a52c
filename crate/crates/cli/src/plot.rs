//! Standalone Python/matplotlib scripts that render the written CSV data.

fn script(data: &str, xcol: &str, ycol: &str, xlabel: &str, ylabel: &str, logx: bool, zero_line: bool) -> String {
    format!(
        r#"import csv
import os
import sys

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "{data}")) as fh:
    rows = list(csv.DictReader(fh))
xs = [float(r["{xcol}"]) for r in rows]
ys = [float(r["{ycol}"]) for r in rows]
fig, ax = plt.subplots()
ax.plot(xs, ys, lw=1.2)
{zero}{logx}ax.set_xlabel("{xlabel}")
ax.set_ylabel("{ylabel}")
out = os.path.splitext(os.path.join(here, "{data}"))[0] + ".png"
fig.savefig(out, dpi=150, bbox_inches="tight")
if "--show" in sys.argv:
    plt.show()
"#,
        zero = if zero_line { "ax.axhline(0.0, color=\"k\", lw=0.6)\n" } else { "" },
        logx = if logx { "ax.set_xscale(\"log\")\n" } else { "" },
    )
}

pub fn m1_script(data: &str) -> String {
    script(data, "h", "M1", "h", "M1(h)", true, true)
}

pub fn displacement_script(data: &str) -> String {
    script(data, "x0", "displacement", "x", "Pi(x) - x", true, true)
}

pub fn trace_script(data: &str) -> String {
    script(data, "x", "y", "x", "y", false, false)
}
