//! Table-producing subcommands: field data, prime ideals, prime elements,
//! character tables, sector covers, torus Fourier data and bounded bases.

use super::config::Config;
use super::report::{num, Check, Report, Table};
use crate::characters::{enumerate_finite_characters, ComponentGroup};
use crate::domain::torus_volumes;
use crate::elements::{
    enumerate_labelled, enumerate_prime_elements, CongruenceClass, PrimeElement,
};
use crate::error::{Error, Result};
use crate::fourier::fourier_approximate_indicator;
use crate::lattice::{bounded_basis, IntegerLattice};
use crate::residue::{totient, ResidueRing};
use crate::sectors::{cover_with_annulus_sectors, select_interior_sectors};
use crate::sieve::sieve_prime_ideals;

/// Points per axis of the emitted residual grid (the check itself uses a
/// finer grid).
const GRID: usize = 64;

fn primary(report: &mut Report, name: &str, table: Table) {
    report.meta("primary_table", name);
    report.tables.insert(name.to_string(), table);
}

fn coord_header(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("c{i}")).collect()
}

fn with_coords(first: &[&str], n: usize, last: &[&str]) -> Table {
    let mut h: Vec<String> = first.iter().map(|s| s.to_string()).collect();
    h.extend(coord_header(n));
    h.extend(last.iter().map(|s| s.to_string()));
    Table {
        header: h,
        rows: Vec::new(),
    }
}

pub fn field_info(cfg: &Config) -> Result<Report> {
    let f = cfg.field.load()?;
    let q = cfg.ideal_q(&f)?;
    let (base, idele) = torus_volumes(&f, &q)?;
    let mut t = Table::new(&["key", "value"]);
    let mut kv = |k: &str, v: String| t.push(vec![k.to_string(), v]);
    kv("name", f.spec.name.clone());
    kv(
        "defining_polynomial",
        format!("{:?}", f.spec.defining_polynomial),
    );
    kv("degree", f.n.to_string());
    kv("r1", f.r1.to_string());
    kv("r2", f.r2.to_string());
    kv("discriminant", f.discriminant.to_string());
    kv("regulator", num(f.regulator));
    kv("torsion_order", f.torsion_order.to_string());
    kv(
        "torsion_generator",
        format!("{:?}", f.torsion_generator.coords),
    );
    kv("class_number", f.class_number.to_string());
    for (i, u) in f.fundamental_units.iter().enumerate() {
        kv(&format!("unit{i}"), format!("{:?}", u.coords));
    }
    kv("q_norm", q.norm()?.to_string());
    kv("phi_q", totient(&f, &q)?.to_string());
    kv("torus_volume", num(base));
    kv("idele_torus_volume", num(idele));
    let mut r = Report::new("field-info");
    r.meta("field", &f.spec.name);
    primary(&mut r, "field", t);
    Ok(r)
}

/// Prime ideals of norm below `bound`, with a generator in the fundamental
/// domain when the class number is one.
pub fn sieve_primes(cfg: &Config) -> Result<Report> {
    let f = cfg.field.load()?;
    let bound = cfg
        .bound
        .ok_or_else(|| Error::Config("sieve-primes needs `bound`".into()))?;
    let gens = f.class_number == 1;
    let primes = sieve_prime_ideals(&f, bound, gens)?;
    let ring = match &cfg.q {
        Some(_) => Some(ResidueRing::new(
            &f,
            &crate::ideal::FractionalIdeal::unit(&f),
            &cfg.ideal_q(&f)?,
        )?),
        None => None,
    };
    let mut t = with_coords(&["norm"], f.n, &["residue_class", "log_weight"]);
    for p in &primes {
        let mut row = vec![p.norm.to_string()];
        match &p.generator {
            Some(g) => row.extend(g.coords.iter().map(|c| c.to_string())),
            None => row.extend(std::iter::repeat(String::new()).take(f.n)),
        }
        let class = match (&ring, &p.generator) {
            (Some(r), Some(g)) => r.class_of(g)?.to_string(),
            _ => String::new(),
        };
        row.push(class);
        row.push(num((p.norm as f64).ln()));
        t.push(row);
    }
    let mut r = Report::new("sieve-primes");
    r.meta("field", &f.spec.name);
    r.meta("bound", bound);
    r.meta("count", primes.len());
    primary(&mut r, "primes", t);
    Ok(r)
}

fn element_table(n: usize, els: &[PrimeElement]) -> Table {
    let mut t = with_coords(&["norm"], n, &["residue_class", "log_weight"]);
    for e in els {
        let mut row = vec![e.norm.to_string()];
        row.extend(e.element.coords.iter().map(|c| c.to_string()));
        row.push(e.residue.map(|c| c.to_string()).unwrap_or_default());
        row.push(num(e.log_weight));
        t.push(row);
    }
    t
}

/// Prime elements of `a` in the configured region (unscaled); labelled by
/// class when `q` is set, filtered when `alpha` is set as well.
pub fn enumerate_elements(cfg: &Config) -> Result<Report> {
    let f = cfg.field.load()?;
    let a = cfg.ideal_a(&f)?;
    let region = cfg
        .region
        .clone()
        .ok_or_else(|| Error::Config("needs a `region`".into()))?;
    let els = match (&cfg.q, cfg.alpha_element(&f)?) {
        (None, _) => enumerate_prime_elements(&f, &a, &region, None)?,
        (Some(_), alpha) => {
            let ring = ResidueRing::new(&f, &a, &cfg.ideal_q(&f)?)?;
            match alpha {
                Some(al) => {
                    let cc = CongruenceClass::new(ring, &al)?;
                    enumerate_prime_elements(&f, &a, &region, Some(&cc))?
                }
                None => enumerate_labelled(&f, &a, &region, &ring)?,
            }
        }
    };
    let mut r = Report::new("enumerate-prime-elements");
    r.meta("field", &f.spec.name);
    r.meta("count", els.len());
    r.meta("weight_sum", num(crate::elements::weight_sum(&els).value()));
    primary(&mut r, "elements", element_table(f.n, &els));
    Ok(r)
}

fn label(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The character table of the component group modulo `q`.
pub fn characters(cfg: &Config) -> Result<Report> {
    let f = cfg.field.load()?;
    let q = cfg.ideal_q(&f)?;
    let group = ComponentGroup::new(&f, &q)?;
    let chars = enumerate_finite_characters(&group);
    let els = group.quotient_elements();
    let mut t = Table::new(&["character", "element", "value_re", "value_im"]);
    let mut worst: f64 = 0.0;
    for (i, chi) in chars.iter().enumerate() {
        for e in &els {
            let v = chi.value(e);
            t.push(vec![i.to_string(), label(e), num(v.re), num(v.im)]);
        }
        for psi in &chars {
            let s: num_complex::Complex64 = els
                .iter()
                .map(|e| chi.value(e) * psi.value(e).conj())
                .sum::<num_complex::Complex64>()
                / els.len() as f64;
            worst = worst.max((s - if chi == psi { 1.0 } else { 0.0 }).norm());
        }
    }
    let mut r = Report::new("characters");
    r.meta("field", &f.spec.name);
    r.meta("group_order", group.order());
    r.meta(
        "labels",
        chars
            .iter()
            .map(|c| format!("[{}]", label(&c.label)))
            .collect::<Vec<_>>()
            .join(" "),
    );
    r.checks.push(Check::new(
        "orthogonality",
        worst <= 1e-9,
        format!("max deviation {worst:e}"),
    ));
    primary(&mut r, "characters", t);
    Ok(r)
}

fn q_str(v: num_rational::Ratio<i128>) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// The annulus-sector cover of `(K tensor R)_{<X}` and, with a body, the
/// interior selection.
pub fn sectors(cfg: &Config) -> Result<Report> {
    let f = cfg.field.load()?;
    let sc = cfg
        .sectors
        .as_ref()
        .ok_or_else(|| Error::Config("needs a `[sectors]` table".into()))?;
    let cover = cover_with_annulus_sectors(&f, sc.x, sc.y)?;
    let sel = match &sc.body {
        Some(b) => Some(select_interior_sectors(&f, b, &cover)?),
        None => None,
    };
    let mut h = vec!["index".to_string()];
    for i in 0..f.places() {
        h.push(format!("r{i}_lo"));
        h.push(format!("r{i}_hi"));
    }
    h.extend((0..f.r1).map(|i| format!("sign{i}")));
    for i in 0..f.r2 {
        h.push(format!("t{i}_lo"));
        h.push(format!("t{i}_hi"));
    }
    h.extend(["volume".to_string(), "inside".to_string()]);
    let mut t = Table {
        header: h,
        rows: Vec::new(),
    };
    for (i, s) in cover.sectors.iter().enumerate() {
        let mut row = vec![i.to_string()];
        for &(lo, hi) in &s.radial {
            row.push(q_str(lo));
            row.push(q_str(hi));
        }
        row.extend(s.signs.iter().map(|x| x.to_string()));
        for &(lo, hi) in &s.angular {
            row.push(q_str(lo));
            row.push(q_str(hi));
        }
        row.push(num(s.volume(&f)));
        row.push(match &sel {
            Some(sel) => sel.inside.binary_search(&i).is_ok().to_string(),
            None => String::new(),
        });
        t.push(row);
    }
    let mut r = Report::new("sectors");
    r.meta("field", &f.spec.name);
    r.meta("x", sc.x);
    r.meta("y", sc.y);
    r.meta("count", cover.sectors.len());
    r.meta("count_bound", num(cover.count_bound(&f)));
    r.meta("union_volume", num(cover.union_volume(&f)));
    r.checks.push(Check::new(
        "disjoint",
        cover.verify_disjoint(),
        "exact pairwise check",
    ));
    r.checks.push(Check::new(
        "count",
        (cover.sectors.len() as f64) <= cover.count_bound(&f),
        format!(
            "{} sectors against C(n) Y^n = {}",
            cover.sectors.len(),
            num(cover.count_bound(&f))
        ),
    ));
    if let Some(sel) = &sel {
        r.meta("inside", sel.inside.len());
        r.meta("deficit_volume", num(sel.deficit_volume));
    }
    primary(&mut r, "sectors", t);
    Ok(r)
}

/// Fourier coefficients of the smoothed torus indicator and the error on a
/// coarse grid.
pub fn fourier_approx(cfg: &Config) -> Result<Report> {
    let fc = cfg
        .fourier
        .as_ref()
        .ok_or_else(|| Error::Config("needs a `[fourier]` table".into()))?;
    let a = fourier_approximate_indicator(
        &fc.set,
        fc.dimension,
        fc.components,
        fc.bandwidth,
        fc.margin,
    )?;
    let d = fc.dimension;
    let mut h = vec!["component".to_string()];
    h.extend((0..d).map(|i| format!("k{i}")));
    h.extend(["re".to_string(), "im".to_string()]);
    let mut coeffs = Table {
        header: h,
        rows: Vec::new(),
    };
    for (j, k, c) in a.coefficients() {
        let mut row = vec![j.to_string()];
        row.extend(k.iter().map(|x| x.to_string()));
        row.push(num(c.re));
        row.push(num(c.im));
        coeffs.push(row);
    }
    let mut h = vec!["component".to_string()];
    h.extend((0..d).map(|i| format!("x{i}")));
    h.extend([
        "indicator".to_string(),
        "approximation".to_string(),
        "in_margin".to_string(),
    ]);
    let mut grid = Table {
        header: h,
        rows: Vec::new(),
    };
    let per = if d <= 2 { GRID } else { 8 };
    for g in 0..fc.components {
        for idx in 0..per.pow(d as u32) {
            let mut rem = idx;
            let x: Vec<f64> = (0..d)
                .map(|_| {
                    let i = rem % per;
                    rem /= per;
                    (i as f64 + 0.5) / per as f64
                })
                .collect();
            let mut row = vec![g.to_string()];
            row.extend(x.iter().map(|&v| num(v)));
            row.push((a.indicator(&x, g) as u8).to_string());
            row.push(num(a.evaluate(&x, g)));
            row.push((a.in_margin(&x, g) as u8).to_string());
            grid.push(row);
        }
    }
    let mut r = Report::new("fourier-approx");
    r.meta("frequency_count", a.frequency_count());
    r.meta("c0", num(a.c0()));
    r.meta("delta", num(a.delta));
    let res = a.residual_bound();
    r.meta("residual", num(res));
    let cmax = a.max_coefficient();
    r.checks.push(Check::new(
        "coefficient_bound",
        cmax <= 1.0,
        format!("max |c| = {cmax}"),
    ));
    primary(&mut r, "coefficients", coeffs);
    r.tables.insert("grid".into(), grid);
    Ok(r)
}

/// Parses whitespace-separated integer rows; the lattice basis is the set
/// of columns.
pub fn parse_matrix(text: &str) -> Result<IntegerLattice> {
    let rows: Vec<Vec<i128>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|w| {
                    w.parse::<i128>()
                        .map_err(|e| Error::Config(format!("bad matrix entry '{w}': {e}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Config("the matrix must be square".into()));
    }
    IntegerLattice::new(
        (0..n)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect(),
    )
}

pub fn format_matrix(l: &IntegerLattice) -> String {
    let n = l.dim();
    let width = l
        .basis
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| format!("{:>width$}", l.basis[j][i]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// A basis with entries bounded by the index, plus the two checks.
pub fn bounded_basis_report(text: &str) -> Result<(Report, String)> {
    let l = parse_matrix(text)?;
    let b = bounded_basis(&l)?;
    let d = l.index()?;
    let mut r = Report::new("bounded-basis");
    r.meta("index", d);
    r.checks.push(Check::new(
        "entry_bound",
        b.max_entry() <= d,
        format!("max entry {} against {d}", b.max_entry()),
    ));
    r.checks.push(Check::new(
        "same_lattice",
        b.same_lattice(&l)?,
        "HNF equality",
    ));
    let mut t = Table::new(&[]);
    t.header = (0..b.dim()).map(|j| format!("col{j}")).collect();
    for i in 0..b.dim() {
        t.push((0..b.dim()).map(|j| b.basis[j][i].to_string()).collect());
    }
    primary(&mut r, "basis", t);
    Ok((r, format_matrix(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::FieldConfig;

    #[test]
    fn matrix_round_trip() {
        let l = parse_matrix("2 1\n0 3\n").unwrap();
        assert_eq!(l.basis, vec![vec![2, 0], vec![1, 3]]);
        assert_eq!(parse_matrix(&format_matrix(&l)).unwrap(), l);
        assert!(parse_matrix("1 2\n3\n").is_err());
        let (r, _) = bounded_basis_report("1000 999\n0 1\n").unwrap();
        assert!(r.all_passed());
    }

    #[test]
    fn gaussian_tables() {
        let mut c = Config::for_field(FieldConfig::reference("gaussian"));
        c.bound = Some(30);
        c.q = Some(super::super::config::IdealConfig::Integer(3));
        let r = sieve_primes(&c).unwrap();
        let t = &r.tables["primes"];
        assert_eq!(
            t.header,
            ["norm", "c0", "c1", "residue_class", "log_weight"]
        );
        // norms 2, 5, 5, 9, 13, 13, 17, 17, 29, 29
        assert_eq!(t.rows.len(), 10);
        let ch = characters(&c).unwrap();
        let m: usize = ch.metadata["group_order"].parse().unwrap();
        assert_eq!(ch.tables["characters"].rows.len(), m * m);
        assert!(ch.all_passed());
    }
}
