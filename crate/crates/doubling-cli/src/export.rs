//! Exporters: a self-contained Macaulay2 script re-declaring the ring and
//! matrices with assertion lines, and a LaTeX matrix rendering.

use std::fmt::Write as _;

use doubling_core::multilinear::PolyMatrix;
use doubling_core::ring::{GenericRing, Parity, Poly, Var};

fn m2_degree(ring: &GenericRing, index: usize) -> u32 {
    ring.degree_of(index)
}

/// Macaulay2 script declaring the ring (with the parity-dependent grading)
/// and the named matrices, followed by zero-product assertions for each
/// composable consecutive pair.
pub fn m2_script(ring: &GenericRing, matrices: &[(String, PolyMatrix)]) -> String {
    let mut out = String::new();
    let names = ring.variable_names();
    let degrees: Vec<String> = (0..ring.num_vars())
        .map(|i| m2_degree(ring, i).to_string())
        .collect();
    let _ = writeln!(out, "-- generated resolution data (n = {})", ring.n());
    let _ = writeln!(
        out,
        "R = QQ[{}, Degrees => {{{}}}];",
        names.join(", "),
        degrees.join(", ")
    );
    for (name, m) in matrices {
        let mut rows = Vec::with_capacity(m.rows());
        for r in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|c| m2_poly(m.at(r, c))).collect();
            rows.push(format!("{{{}}}", row.join(", ")));
        }
        let _ = writeln!(out, "{name} = matrix {{{}}};", rows.join(", "));
    }
    for w in matrices.windows(2) {
        if w[0].1.cols() == w[1].1.rows() {
            let _ = writeln!(out, "assert({} * {} == 0);", w[0].0, w[1].0);
        }
    }
    let _ = writeln!(out, "print \"all assertions passed\";");
    out
}

fn m2_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    // the canonical textual form is already Macaulay2-readable
    format!("{p}")
}

fn latex_var(v: Var) -> String {
    match v {
        Var::C(i, j) => format!("c_{{{i}{j}}}"),
        Var::U(k, l) => format!("u_{{{k}{l}}}"),
        Var::Alpha(s) => format!("\\alpha_{{{s}}}"),
    }
}

fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let ring = p.ring();
    let mut out = String::new();
    for (k, (c, e)) in p.terms().enumerate() {
        let neg = c < &num_bigint::BigInt::from(0);
        let mag = c.magnitude();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let has_vars = e.iter().any(|&x| x > 0);
        if !has_vars || mag != &num_bigint::BigUint::from(1u32) {
            let _ = write!(out, "{mag}");
        }
        for (i, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let _ = write!(out, "{}", latex_var(ring.var_at(i)));
            if exp > 1 {
                let _ = write!(out, "^{{{exp}}}");
            }
        }
    }
    out
}

/// LaTeX bmatrix rendering of one matrix.
pub fn latex_matrix(name: &str, m: &PolyMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% {name}: {} x {}", m.rows(), m.cols());
    let _ = writeln!(out, "{name} = \\begin{{bmatrix}}");
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| latex_poly(m.at(r, c))).collect();
        let _ = writeln!(out, "{} \\\\", row.join(" & "));
    }
    let _ = writeln!(out, "\\end{{bmatrix}}");
    out
}

pub fn latex_document(ring: &GenericRing, matrices: &[(String, PolyMatrix)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "% resolution matrices over the generic ring, n = {} ({})",
        ring.n(),
        match ring.parity() {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    );
    for (name, m) in matrices {
        out.push_str(&latex_matrix(name, m));
        out.push('\n');
    }
    out
}
