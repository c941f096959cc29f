use std::fmt::Write as _;

use flipchain_core::betti::BettiReport;
use flipchain_core::chambers::Location;
use flipchain_core::exactpoly::{format_rational, LaurentPoly, Rational};
use serde::Serialize;

use crate::report::{ChamberReport, SigmaEntry, StabilityReport, VerifyReport};
use crate::{CliError, Format};

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('#', "\\#").replace('%', "\\%")
}

/// `t^-2 + 3t^10` becomes `t^{-2} + 3t^{10}`.
fn latex_poly(p: &LaurentPoly) -> String {
    let text = p.to_string();
    let mut out = String::with_capacity(text.len() + 8);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == '^' {
            out.push('{');
            if chars.peek() == Some(&'-') {
                out.push(chars.next().unwrap());
            }
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                out.push(d);
                chars.next();
            }
            out.push('}');
        }
    }
    out
}

fn latex_table(spec: &str, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("\\begin{{tabular}}{{{spec}}}\n\\hline\n{} \\\\\n\\hline\n", header.join(" & "));
    for r in rows {
        let _ = writeln!(s, "{} \\\\", r.join(" & "));
    }
    s.push_str("\\hline\n\\end{tabular}\n");
    s
}

fn betti_numbers(p: &LaurentPoly) -> String {
    p.dense_coeffs()
        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}

fn q(r: &Rational) -> String {
    format_rational(r)
}

fn opt_q(r: &Option<Rational>) -> String {
    r.as_ref().map(q).unwrap_or_else(|| "-".into())
}

fn location(l: &Option<Location>) -> String {
    match l {
        None => "-".into(),
        Some(Location::Chamber(p)) => format!("chamber {p}"),
        Some(Location::Wall(w)) => format!("wall {w}"),
        Some(Location::Empty) => "empty".into(),
    }
}

const CHAMBER_COLUMNS: [&str; 12] = [
    "position",
    "fm_index",
    "lower",
    "upper",
    "right_closed",
    "representative",
    "rank_minus",
    "rank_plus",
    "dim_pw_minus",
    "dim_pw_plus",
    "codim_minus",
    "codim_plus",
];

fn chamber_rows(r: &ChamberReport) -> Vec<Vec<String>> {
    r.data
        .chambers
        .iter()
        .map(|c| {
            let mut row = vec![
                c.position.to_string(),
                c.fm_index.to_string(),
                c.lower.to_string(),
                c.upper.to_string(),
                c.right_closed.to_string(),
                q(&c.representative),
            ];
            match r.flip_loci.iter().find(|f| f.i == c.fm_index) {
                Some(f) => row.extend(
                    [f.rank_minus, f.rank_plus, f.dim_pw_minus, f.dim_pw_plus, f.codim_minus, f.codim_plus]
                        .map(|v| v.to_string()),
                ),
                None => row.extend(std::iter::repeat_n(String::new(), 6)),
            }
            row
        })
        .collect()
}

pub(crate) fn chambers(r: &ChamberReport, fmt: Format) -> Result<String, CliError> {
    match fmt {
        Format::Json => Ok(json(r)),
        Format::Csv => csv_table(&CHAMBER_COLUMNS, chamber_rows(r)),
        Format::Latex => {
            let rows: Vec<Vec<String>> = r
                .data
                .chambers
                .iter()
                .map(|c| {
                    let close = if c.right_closed { "]" } else { ")" };
                    let flip = r.flip_loci.iter().find(|f| f.i == c.fm_index);
                    vec![
                        format!("$\\mathbf{{FM}}^{{{}}}$", c.fm_index),
                        format!("$({}, {}{close}$", c.lower, c.upper),
                        flip.map_or("--".into(), |f| format!("{} / {}", f.dim_pw_minus, f.dim_pw_plus)),
                        flip.map_or("--".into(), |f| format!("{} / {}", f.codim_minus, f.codim_plus)),
                    ]
                })
                .collect();
            Ok(latex_table(
                "llll",
                &["chamber", "$\\sigma$", "$\\dim \\mathbb{P}W^{\\mp}$", "codim"],
                &rows,
            ))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "d = {}, g = {}, dim FM = {}", r.d, r.g, r.dim);
            let walls: Vec<String> = r.data.walls.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "walls: {}", if walls.is_empty() { "none".into() } else { walls.join(", ") });
            for c in &r.data.chambers {
                let close = if c.right_closed { "]" } else { ")" };
                let _ = write!(
                    s,
                    "FM^{:<3} ({}, {}{close}  rep {}",
                    c.fm_index,
                    c.lower,
                    c.upper,
                    q(&c.representative)
                );
                if let Some(f) = r.flip_loci.iter().find(|f| f.i == c.fm_index) {
                    let _ = write!(
                        s,
                        "  flip: rank {}/{}, dim PW {}/{}, codim {}/{}",
                        f.rank_minus, f.rank_plus, f.dim_pw_minus, f.dim_pw_plus, f.codim_minus, f.codim_plus
                    );
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}

const BETTI_COLUMNS: [&str; 9] = ["d", "g", "i", "agree", "palindromic", "nonneg", "degree", "poincare", "betti"];

pub(crate) fn betti(r: &BettiReport, fmt: Format) -> Result<String, CliError> {
    match fmt {
        Format::Json => Ok(json(r)),
        Format::Csv => csv_table(
            &BETTI_COLUMNS,
            r.entries
                .iter()
                .map(|e| {
                    vec![
                        r.d.to_string(),
                        r.g.to_string(),
                        e.i.to_string(),
                        e.agree.to_string(),
                        e.palindromic.to_string(),
                        e.nonneg.to_string(),
                        e.degree.to_string(),
                        e.p_closed.to_string(),
                        betti_numbers(&e.p_closed),
                    ]
                })
                .collect(),
        ),
        Format::Latex => {
            let rows: Vec<Vec<String>> = r
                .entries
                .iter()
                .map(|e| {
                    vec![
                        format!("$\\mathbf{{FM}}^{{{}}}$", e.i),
                        format!("${}$", latex_poly(&e.p_closed)),
                        if e.agree { "yes" } else { "no" }.into(),
                    ]
                })
                .collect();
            let mut s = latex_table("lll", &["chamber", "$P_t$", "routes agree"], &rows);
            if let Some(u) = &r.u2d {
                let extra = vec![vec!["$\\mathbf{U}(2,d)$".to_string(), format!("${}$", latex_poly(&u.closed))]];
                let mut more = extra;
                if let Some(m) = &r.mcon {
                    more.push(vec!["$\\mathbf{M}_{\\mathrm{con}}$".into(), format!("${}$", latex_poly(m))]);
                }
                s.push_str(&latex_table("ll", &["space", "$P_t$"], &more));
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "d = {}, g = {}", r.d, r.g);
            for e in &r.entries {
                let _ = writeln!(
                    s,
                    "P(FM^{}) = {}  [routes {}, palindromic {}, nonneg {}]",
                    e.i,
                    e.p_closed,
                    if e.agree { "agree" } else { "DISAGREE" },
                    e.palindromic,
                    e.nonneg
                );
            }
            let _ = writeln!(s, "terminal: {}", r.terminal);
            if let Some(u) = &r.u2d {
                let _ = writeln!(s, "U(2,d): {}", u.closed);
                match u.agree {
                    Some(a) => {
                        let _ = writeln!(s, "U(2,d) via bundle: {}", if a { "agrees" } else { "DISAGREES" });
                    }
                    None => s.push_str("U(2,d) via bundle: not applicable\n"),
                }
            }
            if let Some(m) = &r.mcon {
                let _ = writeln!(s, "M_con: {m}");
            }
            if let Some(b) = r.blowup_check {
                let _ = writeln!(s, "blow-up relation: {}", if b { "holds" } else { "FAILS" });
            }
            Ok(s)
        }
    }
}

const STABILITY_COLUMNS: [&str; 11] = [
    "sigma",
    "location",
    "fm_semistable",
    "fm_stable",
    "pair_semistable",
    "pair_stable",
    "max_destabilizer",
    "hn_steps",
    "hn_slopes",
    "equivalence",
    "witness",
];

fn equivalence_cell(e: &SigmaEntry) -> String {
    match &e.equivalence {
        Some(r) if r.holds() => "holds".into(),
        Some(_) => "fails".into(),
        None => "unchecked".into(),
    }
}

fn stability_row(e: &SigmaEntry) -> Vec<String> {
    vec![
        q(&e.sigma),
        location(&e.location),
        e.fm.semistable.to_string(),
        e.fm.stable.to_string(),
        e.pair.semistable.to_string(),
        e.pair.stable.to_string(),
        e.max_destabilizer.clone().unwrap_or_default(),
        e.hn.as_ref().map(|h| h.steps.join(" ")).unwrap_or_default(),
        e.hn_slopes.iter().map(q).collect::<Vec<_>>().join(" "),
        equivalence_cell(e),
        e.equivalence.as_ref().and_then(|r| r.witness.clone()).unwrap_or_default(),
    ]
}

pub(crate) fn stability(r: &StabilityReport, fmt: Format) -> Result<String, CliError> {
    match fmt {
        Format::Json => Ok(json(r)),
        Format::Csv => csv_table(&STABILITY_COLUMNS, r.entries.iter().map(stability_row).collect()),
        Format::Latex => {
            let yn = |b: bool| if b { "s" } else { "--" };
            let rows: Vec<Vec<String>> = r
                .entries
                .iter()
                .map(|e| {
                    let fm = if e.fm.stable { "s" } else if e.fm.semistable { "ss" } else { "--" };
                    let pair = if e.pair.stable { "s" } else if e.pair.semistable { "ss" } else { "--" };
                    vec![
                        format!("${}$", q(&e.sigma)),
                        fm.into(),
                        pair.into(),
                        latex_escape(&e.hn.as_ref().map(|h| h.steps.join(", ")).unwrap_or_default()),
                        equivalence_cell(e),
                    ]
                })
                .collect();
            let mut s = latex_table("lllll", &["$\\sigma$", "FM", "pair", "HN steps", "equivalence"], &rows);
            let _ = writeln!(
                s,
                "% oriented FM: {}/{}, oriented pair: {}/{}",
                yn(r.oriented_fm.semistable),
                yn(r.oriented_fm.stable),
                yn(r.oriented_pair.semistable),
                yn(r.oriented_pair.stable)
            );
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "rank {}, degree {}, genus {}", r.rank, r.degree, r.genus);
            let _ = writeln!(
                s,
                "sigma bound {}, sigma_max {} (pair {}), final chamber stable {}",
                opt_q(&r.sigma_bound),
                opt_q(&r.sigma_max),
                opt_q(&r.sigma_max_pair),
                r.final_chamber_stable.map_or("-".into(), |b| b.to_string())
            );
            let _ = writeln!(
                s,
                "oriented FM: semistable {}, stable {}; oriented pair: semistable {}, stable {}",
                r.oriented_fm.semistable, r.oriented_fm.stable, r.oriented_pair.semistable, r.oriented_pair.stable
            );
            for e in &r.entries {
                let _ = writeln!(
                    s,
                    "sigma {} ({}): FM ss {} s {}; pair ss {} s {}; HN [{}] slopes [{}]; equivalence {}",
                    q(&e.sigma),
                    location(&e.location),
                    e.fm.semistable,
                    e.fm.stable,
                    e.pair.semistable,
                    e.pair.stable,
                    e.hn.as_ref().map(|h| h.steps.join(", ")).unwrap_or_default(),
                    e.hn_slopes.iter().map(q).collect::<Vec<_>>().join(", "),
                    equivalence_cell(e)
                );
                for n in &e.notes {
                    let _ = writeln!(s, "  note: {n}");
                }
            }
            Ok(s)
        }
    }
}

const VERIFY_COLUMNS: [&str; 6] = ["d", "g", "walls", "chambers", "passed", "failures"];

pub(crate) fn verify(r: &VerifyReport, fmt: Format) -> Result<String, CliError> {
    match fmt {
        Format::Json => Ok(json(r)),
        Format::Csv => csv_table(
            &VERIFY_COLUMNS,
            r.cells
                .iter()
                .map(|c| {
                    vec![
                        c.d.to_string(),
                        c.g.to_string(),
                        c.walls.to_string(),
                        c.chambers.to_string(),
                        c.passed().to_string(),
                        c.failures.join("; "),
                    ]
                })
                .collect(),
        ),
        Format::Latex => {
            let rows: Vec<Vec<String>> = r
                .cells
                .iter()
                .map(|c| {
                    vec![
                        c.d.to_string(),
                        c.g.to_string(),
                        c.walls.to_string(),
                        if c.passed() { "pass" } else { "fail" }.into(),
                    ]
                })
                .collect();
            Ok(latex_table("rrrl", &["$d$", "$g$", "walls", "checks"], &rows))
        }
        Format::Text => {
            let mut s = String::new();
            let failed = r.cells.iter().filter(|c| !c.passed()).count();
            let _ = writeln!(
                s,
                "grid g <= {}, d >= {}: {} cells, {} failed",
                r.grid.g_max,
                r.grid.d_min,
                r.cells.len(),
                failed
            );
            let _ = writeln!(
                s,
                "stability suite (seed {}): {} models, {} evaluations, {} ambiguous, {} failures",
                r.seed,
                r.suite.models,
                r.suite.evaluations,
                r.suite.ambiguous,
                r.suite.failures.len()
            );
            for f in r.failures() {
                let _ = writeln!(s, "  {f}");
            }
            let _ = writeln!(s, "{}", if r.passed() { "PASS" } else { "FAIL" });
            Ok(s)
        }
    }
}
