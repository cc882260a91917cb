//! Browser bindings: space validation, free norm and the Werner audit.

use std::fmt::Write as _;

use wasm_bindgen::prelude::*;

use ultralip::format::parse_any;
use ultralip::lipschitz::{free_norm_lp, free_norm_tree, FreeElement};
use ultralip::mideal::werner_audit;
use ultralip::rational::{fmt_rational as r, parse_rational};
use ultralip::FiniteUltraSpace;

type Res = Result<String, String>;

fn show(res: Res) -> String {
    res.unwrap_or_else(|e| format!("error: {e}"))
}

fn load(text: &str) -> Result<FiniteUltraSpace, String> {
    parse_any(text).map_err(|e| e.to_string())
}

fn element(space: &FiniteUltraSpace, s: &str) -> Result<FreeElement, String> {
    let mut coeffs = Vec::new();
    for it in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (l, c) = it.split_once(':').ok_or_else(|| format!("expected label:coeff, got {it:?}"))?;
        let x = space.lookup(l.trim()).map_err(|e| e.to_string())?;
        coeffs.push((x, parse_rational(c).map_err(|e| e.to_string())?));
    }
    FreeElement::from_coeffs(space.len(), coeffs).map_err(|e| e.to_string())
}

pub fn validate_report(text: &str) -> Res {
    let s = load(text)?;
    let mut out = String::new();
    let _ = writeln!(out, "points          {}", s.len());
    let _ = writeln!(out, "labels          {}", s.labels().join(","));
    let _ = writeln!(out, "is_ultrametric  {}", s.is_ultrametric());
    if let Some((i, j, k)) = s.ultrametric_witness() {
        let _ = writeln!(out, "witness         {},{},{}", s.label(i), s.label(j), s.label(k));
    }
    let _ = writeln!(out, "diameter        {}", r(&s.diameter()));
    let _ = writeln!(out, "min_distance    {}", s.min_positive_distance().map_or("-".into(), |d| r(&d)));
    Ok(out)
}

pub fn free_norm_report(text: &str, elem: &str) -> Res {
    let s = load(text)?;
    let mu = element(&s, elem)?;
    let (lp, cert) = free_norm_lp(&s, &mu).map_err(|e| e.to_string())?;
    let tree = free_norm_tree(&s, &mu).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "lp      {}", r(&lp));
    let _ = writeln!(out, "tree    {}", r(&tree));
    let _ = writeln!(out, "agree   {}", lp == tree);
    let _ = writeln!(out, "\nnorming function");
    for x in 0..s.len() {
        let _ = writeln!(out, "  {:<6} {}", s.label(x), r(cert.f.value(x)));
    }
    let _ = writeln!(out, "certificate {}", if cert.verify(&s, &mu) { "verified" } else { "REJECTED" });
    Ok(out)
}

pub fn werner_report(grid: u32) -> Res {
    let a = werner_audit(grid).map_err(|e| e.to_string())?;
    let (x, y) = a.residual_pair;
    let mut out = String::new();
    let _ = writeln!(out, "points      {}", a.space.len());
    let _ = writeln!(out, "‖F‖         {}", r(&a.norm));
    let _ = writeln!(out, "‖QF‖        {}", r(&a.q_norm));
    let _ = writeln!(out, "‖F-QF‖      {}", r(&a.residual_norm));
    let _ = writeln!(out, "attained    ({},{})", a.space.label(x), a.space.label(y));
    let _ = writeln!(out, "reproduced  {}", a.reproduced);
    Ok(out)
}

/// Summary of a space or dendrogram file.
#[wasm_bindgen]
pub fn validate(text: &str) -> String {
    show(validate_report(text))
}

/// Free norm of `label:coeff,...` by both routes.
#[wasm_bindgen]
pub fn free_norm(text: &str, elem: &str) -> String {
    show(free_norm_report(text, elem))
}

#[wasm_bindgen]
pub fn werner(grid: u32) -> String {
    show(werner_report(grid))
}
