//! SVG arc diagram of the meander of a pair of boundary orders.

use std::fmt::Write;

use crate::meander::{MorseVector, Orders};

const STEP: f64 = 40.0;
const MARGIN: f64 = 30.0;

/// Semicircles over integer axis positions, upper arcs for curve pairs
/// `(2t-1, 2t)` and lower arcs for `(2t, 2t+1)`. Labels sit above the axis
/// and Morse numbers below it when given.
pub fn render_svg(orders: &Orders, morse: Option<&MorseVector>) -> String {
    let n = orders.n();
    let curve: Vec<usize> = (1..=n).map(|k| orders.pos1(orders.h0(k))).collect();
    let radius = |a: usize, b: usize| (b.abs_diff(a) as f64) * STEP / 2.0;
    let max_r = (1..n)
        .map(|k| radius(curve[k - 1], curve[k]))
        .fold(STEP / 2.0, f64::max);
    let width = 2.0 * MARGIN + STEP * (n.saturating_sub(1) as f64);
    let axis_y = MARGIN + max_r + 20.0;
    let height = 2.0 * axis_y;
    let x = |p: usize| MARGIN + STEP * (p as f64 - 1.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{:.1}" y1="{axis_y:.1}" x2="{:.1}" y2="{axis_y:.1}" stroke="gray"/>"#,
        x(1) - MARGIN / 2.0,
        x(n) + MARGIN / 2.0
    );
    for k in 1..n {
        let (a, b) = (curve[k - 1], curve[k]);
        let r = radius(a, b);
        // sweep 1 draws the arc above the axis when moving right
        let upper = k % 2 == 1;
        let sweep = u8::from(upper == (a < b));
        let _ = writeln!(
            s,
            r#"<path d="M {:.1} {axis_y:.1} A {r:.1} {r:.1} 0 0 {sweep} {:.1} {axis_y:.1}" fill="none" stroke="black"/>"#,
            x(a),
            x(b)
        );
    }
    for p in 1..=n {
        let v = orders.h1(p);
        let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{axis_y:.1}" r="2.5"/>"#, x(p));
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle">{v}</text>"#,
            x(p) + 8.0,
            axis_y - 6.0
        );
        if let Some(m) = morse {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" font-size="10" fill="blue" text-anchor="middle">{}</text>"#,
                x(p) + 8.0,
                axis_y + 14.0,
                m.get(v)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::octahedron_orders;
    use crate::meander::morse_numbers;

    #[test]
    fn one_path_per_arc() {
        let o = octahedron_orders();
        let m = morse_numbers(&o).unwrap();
        let svg = render_svg(&o, Some(&m));
        assert_eq!(svg.matches("<path").count(), 26);
        assert_eq!(svg.matches("<circle").count(), 27);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn single_point() {
        let o = Orders::from_permutation(&"1".parse().unwrap());
        assert_eq!(render_svg(&o, None).matches("<path").count(), 0);
    }
}
