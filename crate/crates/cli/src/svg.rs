//! Static SVG line chart of a CUSUM path between its boundaries.

use std::fmt::Write;

use cotrend_core::cusum::CusumResult;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 48.0;

pub fn cusum_svg(c: &CusumResult, first_year: i32) -> String {
    let years: Vec<f64> =
        c.t.iter()
            .map(|t| (first_year as i64 + *t as i64 - 1) as f64)
            .collect();
    let (x0, x1) = (years[0], *years.last().unwrap_or(&years[0]));
    let ymax = c
        .upper
        .iter()
        .chain(&c.psi)
        .fold(1.0_f64, |m, v| m.max(v.abs()))
        * 1.05;
    let sx = |x: f64| {
        if x1 > x0 {
            PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD)
        } else {
            W / 2.0
        }
    };
    let sy = |y: f64| H / 2.0 - y / ymax * (H / 2.0 - PAD);
    let path = |ys: &[f64]| {
        let mut s = String::new();
        for (i, (x, y)) in years.iter().zip(ys).enumerate() {
            let _ = write!(
                s,
                "{}{:.2},{:.2}",
                if i == 0 { "M" } else { " L" },
                sx(*x),
                sy(*y)
            );
        }
        s
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<line x1="{PAD}" y1="{y:.2}" x2="{x2}" y2="{y:.2}" stroke="#999" stroke-width="0.5"/>"##,
        y = sy(0.0),
        x2 = W - PAD
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="none" stroke="#c33" stroke-dasharray="6 4"/>"##,
        path(&c.upper)
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="none" stroke="#c33" stroke-dasharray="6 4"/>"##,
        path(&c.lower)
    );
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="none" stroke="#236" stroke-width="2"/>"##,
        path(&c.psi)
    );
    let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{text}</text>"#
        );
    };
    label(&mut out, sx(x0), H - PAD / 2.0, "start", &format!("{x0}"));
    label(&mut out, sx(x1), H - PAD / 2.0, "end", &format!("{x1}"));
    label(
        &mut out,
        W / 2.0,
        PAD / 2.0,
        "middle",
        &format!("CUSUM, {} bounds", c.level),
    );
    out.push_str("</svg>\n");
    out
}
