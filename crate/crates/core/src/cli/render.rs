//! ASCII and TikZ pictures of a decomposition.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::dcomplex::{Bidegree, BigradedComplex};
use crate::decomp::{Decomposition, Direction};
use crate::exactla::is_zero_vector;
use crate::scalar::Scalar;

/// One arrow of one summand, with the scalar `c` in `D v_from = c v_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub summand: usize,
    pub from: Bidegree,
    pub to: Bidegree,
    pub direction: Direction,
    pub coeff: Scalar,
}

pub fn arrows(c: &BigradedComplex, d: &Decomposition) -> Vec<Arrow> {
    let mut out = Vec::new();
    for (i, s) in d.summands.iter().enumerate() {
        for (from, to, direction) in s.shape.arrows() {
            let (v, w) = (&s.vectors[&from], &s.vectors[&to]);
            let m = match direction {
                Direction::D1 => c.d1(from),
                Direction::D2 => c.d2(from),
            };
            let image = m.apply(v);
            let coeff = match w.iter().position(|x| !x.is_zero()) {
                Some(j) if !is_zero_vector(&image) => &image[j] * &w[j].inv().expect("nonzero"),
                _ => Scalar::zero(),
            };
            out.push(Arrow { summand: i, from, to, direction, coeff });
        }
    }
    out
}

fn grid_box(c: &BigradedComplex) -> (i64, i64, i64, i64) {
    c.bounding_box().unwrap_or((0, 0, 0, 0))
}

fn point(at: Bidegree) -> String {
    format!("({},{})", at.0, at.1)
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::D1 => "d1",
        Direction::D2 => "d2",
    }
}

/// A grid of component dimensions with arrow counts between neighbours and
/// `[n]` inside each unit cell spanned by `n` squares, followed by every
/// non-dot summand with its arrows and the dot counts.
pub fn ascii(c: &BigradedComplex, d: &Decomposition, show_scalars: bool) -> String {
    const CELL: usize = 5;
    const GAP: usize = 6;
    let (p0, p1, q0, q1) = grid_box(c);
    let all = arrows(c, d);
    let mut count: BTreeMap<(Bidegree, Direction), usize> = BTreeMap::new();
    for a in &all {
        *count.entry((a.from, a.direction)).or_insert(0) += 1;
    }
    let mut squares: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for s in d.summands.iter().filter(|s| s.shape.is_square()) {
        *squares.entry(s.shape.points()[0]).or_insert(0) += 1;
    }
    let mut out = String::new();
    for q in (q0..=q1).rev() {
        let mut line = format!("{q:>3} |");
        for p in p0..=p1 {
            let dim = c.dim((p, q));
            let cell = if dim == 0 { ".".to_string() } else { dim.to_string() };
            write!(line, "{cell:^CELL$}").unwrap();
            if p < p1 {
                let n = count.get(&((p, q), Direction::D1)).copied().unwrap_or(0);
                let link = if n == 0 { String::new() } else { format!("-{n}->") };
                write!(line, "{link:^GAP$}").unwrap();
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if q > q0 {
            let mut line = "    |".to_string();
            for p in p0..=p1 {
                let n = count.get(&((p, q - 1), Direction::D2)).copied().unwrap_or(0);
                let link = if n == 0 { String::new() } else { format!("^{n}") };
                write!(line, "{link:^CELL$}").unwrap();
                if p < p1 {
                    let n = squares.get(&(p, q - 1)).copied().unwrap_or(0);
                    let mark = if n == 0 { String::new() } else { format!("[{n}]") };
                    write!(line, "{mark:^GAP$}").unwrap();
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    let width = (p1 - p0 + 1) as usize * (CELL + GAP) - GAP;
    writeln!(out, "    +{}", "-".repeat(width)).unwrap();
    let mut axis = "     ".to_string();
    for p in p0..=p1 {
        write!(axis, "{p:^CELL$}").unwrap();
        if p < p1 {
            write!(axis, "{:GAP$}", "").unwrap();
        }
    }
    writeln!(out, "{}", axis.trim_end()).unwrap();

    out.push_str("\nsummands:\n");
    for (i, s) in d.summands.iter().enumerate() {
        if s.shape.is_dot() {
            continue;
        }
        let mut line = format!("  #{i:<3} {}", s.shape);
        for a in all.iter().filter(|a| a.summand == i) {
            write!(line, "  {}->{}", point(a.from), point(a.to)).unwrap();
            if show_scalars {
                write!(line, "[{} {}]", direction_name(a.direction), a.coeff).unwrap();
            }
        }
        writeln!(out, "{line}").unwrap();
    }
    let mut dots: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for s in d.summands.iter().filter(|s| s.shape.is_dot()) {
        *dots.entry(s.shape.points()[0]).or_insert(0) += 1;
    }
    let dots: Vec<String> = dots.iter().map(|(&at, n)| format!("{}x{n}", point(at))).collect();
    writeln!(out, "dots: {}", if dots.is_empty() { "none".to_string() } else { dots.join(" ") }).unwrap();
    out
}

fn node(i: usize, (p, q): Bidegree) -> String {
    format!("s{i}_p{p}_q{q}")
}

/// A `tikzpicture` with a dot per summand vector and a coloured arrow per
/// summand arrow. Needs only `\usepackage{tikz}`.
pub fn tikz(c: &BigradedComplex, d: &Decomposition, show_scalars: bool) -> String {
    const SPACING: f64 = 2.0;
    const STEP: f64 = 0.35;
    let (p0, p1, q0, q1) = grid_box(c);
    let mut out = String::new();
    out.push_str("\\begin{tikzpicture}[\n");
    out.push_str("  d1/.style={->, blue!70!black},\n");
    out.push_str("  d2/.style={->, red!70!black},\n");
    out.push_str("  vec/.style={circle, fill, inner sep=1pt},\n");
    out.push_str("  lbl/.style={font=\\tiny, inner sep=1pt}]\n");
    for p in p0..=p1 {
        writeln!(out, "\\node at ({:.2},{:.2}) {{${p}$}};", p as f64 * SPACING, q0 as f64 * SPACING - 0.6).unwrap();
    }
    for q in q0..=q1 {
        writeln!(out, "\\node at ({:.2},{:.2}) {{${q}$}};", p0 as f64 * SPACING - 0.6, q as f64 * SPACING).unwrap();
    }
    let mut slot: BTreeMap<Bidegree, usize> = BTreeMap::new();
    for (i, s) in d.summands.iter().enumerate() {
        for &at in s.shape.points() {
            let k = slot.entry(at).or_insert(0);
            let cols = (c.dim(at) as f64).sqrt().ceil().max(1.0) as usize;
            let x = at.0 as f64 * SPACING + (*k % cols) as f64 * STEP;
            let y = at.1 as f64 * SPACING + (*k / cols) as f64 * STEP;
            writeln!(out, "\\node[vec] ({}) at ({x:.2},{y:.2}) {{}};", node(i, at)).unwrap();
            *k += 1;
        }
    }
    for a in arrows(c, d) {
        let label = if show_scalars {
            format!(" node[lbl, midway, above] {{${}$}}", a.coeff)
        } else {
            String::new()
        };
        writeln!(
            out,
            "\\draw[{}] ({}) --{label} ({});",
            direction_name(a.direction),
            node(a.summand, a.from),
            node(a.summand, a.to)
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

/// `(from, to)` pairs of every arrow drawn in an ASCII rendering, read back
/// from the summand listing.
pub fn ascii_arrow_pairs(text: &str) -> Vec<(Bidegree, Bidegree)> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| l.trim_start().starts_with('#')) {
        for token in line.split_whitespace() {
            let token = token.split('[').next().unwrap_or("");
            if let Some((a, b)) = token.split_once("->") {
                if let (Some(a), Some(b)) = (parse_point(a), parse_point(b)) {
                    out.push((a, b));
                }
            }
        }
    }
    out.sort();
    out
}

/// `(from, to)` pairs of every `\draw` in a TikZ rendering.
pub fn tikz_arrow_pairs(text: &str) -> Vec<(Bidegree, Bidegree)> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| l.starts_with("\\draw")) {
        let names: Vec<Bidegree> = line
            .split(['(', ')'])
            .filter_map(|piece| {
                let rest = piece.strip_prefix('s')?;
                let (_, pq) = rest.split_once("_p")?;
                let (p, q) = pq.split_once("_q")?;
                Some((p.parse().ok()?, q.parse().ok()?))
            })
            .collect();
        if let [a, b] = names[..] {
            out.push((a, b));
        }
    }
    out.sort();
    out
}

fn parse_point(s: &str) -> Option<Bidegree> {
    let (p, q) = s.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
    Some((p.parse().ok()?, q.parse().ok()?))
}
