//! JSON, plain-text and DOT renderings of a report.

use std::fmt::Write;

use crate::job::Format;
use crate::report::Report;

pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => emit_json(report),
        Format::Text => emit_text(report),
        Format::Dot => emit_dot(report),
    }
}

pub fn emit_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn emit_text(r: &Report) -> String {
    let mut s = String::new();
    let j = &r.job;
    let crossed: Vec<String> = j.crossed.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "{} crossed {{{}}}, V = L{}", j.type_, crossed.join(","), vec(&j.highest_weight));
    let g = &r.grading;
    let layers: Vec<String> = g.layers.iter().map(|l| format!("g{}:{}", l.degree, l.dim)).collect();
    let _ = writeln!(s, "grading: depth {}, {}", g.depth, layers.join(" "));
    let rep = &r.representation;
    let _ = writeln!(
        s,
        "V: dim {}, lowest form {}, casimir {}, c0 {}",
        rep.dimension,
        vec(&rep.lowest_form),
        rep.casimir,
        rep.c0
    );
    let counts: Vec<String> = r.bgg.degree_counts.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        s,
        "BGG: {} components, per degree ({}), euler {}",
        r.bgg.components.len(),
        counts.join(","),
        r.bgg.euler_characteristic
    );
    for c in &r.bgg.components {
        let _ = writeln!(
            s,
            "  [{}] H{} w={} lowest {} highest {} dim {} E={} casimir {} laplacian {}{}",
            c.index,
            c.degree,
            c.word,
            vec(&c.lowest_weight),
            vec(&c.highest_weight),
            c.dimension,
            c.homogeneity,
            c.casimir,
            c.laplacian,
            if c.identity_holds { "" } else { " IDENTITY FAILS" }
        );
    }
    for a in &r.bgg.arrows {
        let _ = writeln!(s, "  [{}] -> [{}] order {}", a.from, a.to, a.candidate_order);
    }
    let _ = writeln!(s, "filtration:");
    for l in &r.filtration {
        let comps: Vec<String> = l
            .components
            .iter()
            .map(|c| format!("{}x{} c={}", c.multiplicity, vec(&c.lowest_weight), c.casimir))
            .collect();
        let _ = writeln!(
            s,
            "  level {} E={} dim {}: {}",
            l.level,
            l.grading_eigenvalue,
            l.dimension,
            comps.join(", ")
        );
    }
    let _ = writeln!(s, "splitting:");
    for sp in &r.splitting {
        let _ = writeln!(
            s,
            "  level {} target {} mu0 {} product {} {}",
            sp.level,
            vec(&sp.target),
            sp.mu0,
            sp.product,
            if sp.splits { "splits" } else { "does not split" }
        );
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(s, "verification: {}", if v.passed { "PASS" } else { "FAIL" });
        for c in &v.checks {
            let _ = writeln!(
                s,
                "  {} {}{}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }
            );
        }
    }
    s
}

pub fn emit_dot(r: &Report) -> String {
    let mut s = String::new();
    let crossed: Vec<String> = r.job.crossed.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "digraph bgg {{");
    let _ = writeln!(
        s,
        "  label=\"{} crossed {{{}}} V=L{}\";",
        r.job.type_,
        crossed.join(","),
        vec(&r.job.highest_weight)
    );
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  node [shape=box];");
    let top = r.bgg.degree_counts.len();
    for k in 0..top {
        let ids: Vec<String> = r
            .bgg
            .components
            .iter()
            .filter(|c| c.degree == k)
            .map(|c| format!("c{}", c.index))
            .collect();
        let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for c in &r.bgg.components {
        let _ = writeln!(
            s,
            "  c{} [label=\"H{} {}\\nlowest {}\\ncasimir {}\"];",
            c.index,
            c.degree,
            c.word,
            vec(&c.lowest_weight),
            c.casimir
        );
    }
    for a in &r.bgg.arrows {
        let _ = writeln!(s, "  c{} -> c{};", a.from, a.to);
    }
    let _ = writeln!(s, "}}");
    s
}
