//! Plain CSV writers. Headers are fixed; numbers carry 12 significant digits.

use std::fmt::Write as _;

use dirac_decoherence::experiments::{DistributionSnapshot, Panel};
use dirac_decoherence::{EntropyTrace, SpinorField};

pub const ENTROPY_HEADER: &str = "t,S_bits,rho00,rho01_re,rho01_im,rho11";
pub const DISTRIBUTION_HEADER: &str = "x,prob_minus,prob_plus";
pub const FIELD_HEADER: &str = "x,psi_minus_re,psi_minus_im,psi_plus_re,psi_plus_im";

/// Abscissa column: fixed notation with 12 decimals.
pub fn fmt_abscissa(v: f64) -> String {
    let s = format!("{v:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent only when needed.
pub fn fmt_g(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn row(out: &mut String, abscissa: f64, values: impl IntoIterator<Item = f64>) {
    out.push_str(&fmt_abscissa(abscissa));
    for v in values {
        out.push(',');
        out.push_str(&fmt_g(v));
    }
    out.push('\n');
}

pub fn entropy_csv(trace: &EntropyTrace) -> String {
    let mut out = format!("{ENTROPY_HEADER}\n");
    for s in &trace.samples {
        let r01 = s.rho.rho01();
        row(
            &mut out,
            s.t,
            [s.entropy, s.rho.rho00(), r01.re, r01.im, s.rho.rho11()],
        );
    }
    out
}

pub fn distribution_csv(snapshot: &DistributionSnapshot) -> String {
    let mut out = format!("{DISTRIBUTION_HEADER}\n");
    for i in 0..snapshot.x.len() {
        row(&mut out, snapshot.x[i], [snapshot.minus[i], snapshot.plus[i]]);
    }
    out
}

pub fn field_csv(field: &SpinorField) -> String {
    let mut out = format!("{FIELD_HEADER}\n");
    for (i, x) in field.grid().coordinates().into_iter().enumerate() {
        let (a, b) = (field.minus()[i], field.plus()[i]);
        row(&mut out, x, [a.re, a.im, b.re, b.im]);
    }
    out
}

/// `<abscissa>,<series...>` in abscissa order.
pub fn panel_csv(panel: &Panel) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}", panel.abscissa_label);
    for s in &panel.series {
        let _ = write!(out, ",{}", s.label);
    }
    out.push('\n');
    for (i, &x) in panel.abscissa.iter().enumerate() {
        row(&mut out, x, panel.series.iter().map(|s| s.values[i]));
    }
    out
}
