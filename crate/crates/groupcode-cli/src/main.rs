//! Command-line front end: code classification, PAut computation, Cauchy
//! construction and analysis, ideal enumeration, and the two-abelian-factor
//! harness. All verdicts come straight from the library; the CLI only
//! parses, dispatches and formats.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 cap exceeded.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use groupcode::caps::Caps;
use groupcode::cauchy::{
    self, alpha_f, alpha_f_star, parse_scaling, proj_line, CauchySpec, ProjPoint,
};
use groupcode::classify;
use groupcode::error::Error;
use groupcode::gf::FiniteField;
use groupcode::groupalg::{self, GroupAlgebra, Sided};
use groupcode::lincode::LinearCode;

mod render;
use render::Doc;

#[derive(Parser)]
#[command(name = "groupcode", version, about = "Group-code structure of linear codes", disable_help_subcommand = true)]
struct Cli {
    /// Machine-readable key=value output (byte-stable across runs).
    #[arg(long, global = true)]
    machine: bool,

    /// Cap on the code length for automorphism computations.
    #[arg(long, global = true, value_name = "N")]
    cap_n: Option<usize>,

    /// Cap on enumerated permutation group orders.
    #[arg(long, global = true, value_name = "N")]
    cap_group: Option<u64>,

    /// Accepted for script compatibility; all computations are
    /// deterministic and ignore the seed.
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation automorphism group of a code file.
    Paut {
        /// Code file: "q n k" header then k generator rows.
        file: String,
    },
    /// Group-code classification of a code file.
    Classify {
        file: String,
        /// Also decide left G-code for this group spec (e.g. S3, C6, D8,
        /// E2^3, A:2x4, MC:3,2,2, products with 'x').
        #[arg(long)]
        group: Option<String>,
    },
    /// Construct and analyze a Cauchy code.
    Cauchy(CauchyArgs),
    /// One-dimensional classification of span{v}.
    Onedim {
        /// Field label, "p" or "p^m".
        #[arg(long)]
        field: String,
        /// Comma-separated integer reps.
        #[arg(long)]
        vector: String,
        /// Group specs to test for admissibility (repeatable).
        #[arg(long = "group")]
        groups: Vec<String>,
    },
    /// Enumerate the (left or two-sided) ideals of FG.
    Ideals {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        two_sided: bool,
    },
    /// Check that every two-sided ideal of FG is an abelian group code,
    /// for G = AB with A, B abelian.
    CheckAb {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        /// Generator labels of A (comma-separated); found automatically
        /// when omitted.
        #[arg(long)]
        a_gens: Option<String>,
        /// Generator labels of B (comma-separated).
        #[arg(long)]
        b_gens: Option<String>,
    },
}

#[derive(Args)]
struct CauchyArgs {
    /// Spec file: "q k", location line, scaling line.
    file: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// "F" | "Fstar" | "P1" | comma-separated points ("inf" allowed).
    #[arg(long)]
    loc: Option<String>,
    /// "const c" | "fm m" | "fmm m m2" | comma-separated values.
    #[arg(long)]
    scale: Option<String>,
    /// Write the generator matrix to this file.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are success paths
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut caps = Caps::default();
    if let Some(n) = cli.cap_n {
        caps.paut_degree = n;
    }
    if let Some(g) = cli.cap_group {
        caps.group_order = g;
    }
    match run(&cli, &caps) {
        Ok(doc) => {
            print!("{}", doc.render(cli.machine));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read '{path}': {e}"),
    })
}

fn run(cli: &Cli, caps: &Caps) -> Result<Doc, Error> {
    match &cli.command {
        Command::Paut { file } => cmd_paut(&read_file(file)?, caps),
        Command::Classify { file, group } => cmd_classify(&read_file(file)?, group.as_deref(), caps),
        Command::Cauchy(args) => cmd_cauchy(args, caps),
        Command::Onedim { field, vector, groups } => cmd_onedim(field, vector, groups, caps),
        Command::Ideals { group, field, two_sided } => cmd_ideals(group, field, *two_sided, caps),
        Command::CheckAb { group, field, a_gens, b_gens } => {
            cmd_check_ab(group, field, a_gens.as_deref(), b_gens.as_deref(), caps)
        }
    }
}

fn cmd_paut(text: &str, caps: &Caps) -> Result<Doc, Error> {
    let code = LinearCode::parse(text)?;
    let paut = code.paut(caps)?;
    let subs = classify::regular_subgroups(&paut, caps)?;
    let mut doc = Doc::new("paut");
    doc.kv("field", code.field().label());
    doc.kv("n", code.len());
    doc.kv("k", code.dim());
    doc.kv("paut_order", paut.order());
    doc.kv("paut_generators", paut.generator_string());
    doc.kv("transitive", paut.is_transitive());
    doc.kv("regular_subgroup_count", subs.len());
    doc.human(format!(
        "PAut has order {} with generators {}",
        paut.order(),
        paut.generator_string()
    ));
    doc.human(format!(
        "transitive: {}; regular subgroups of order n: {}",
        paut.is_transitive(),
        subs.len()
    ));
    Ok(doc)
}

fn cmd_classify(text: &str, group: Option<&str>, caps: &Caps) -> Result<Doc, Error> {
    let code = LinearCode::parse(text)?;
    let mut doc = Doc::new("classify");
    doc.kv("field", code.field().label());
    doc.kv("n", code.len());
    doc.kv("k", code.dim());

    if let Some(spec) = group {
        let g = groupalg::group_from_spec(spec)?;
        let verdict = classify::is_left_g_code(&code, &g, caps)?;
        doc.kv("group", spec);
        doc.kv("is_left_g_code", verdict.is_some());
        match verdict {
            Some(w) => {
                doc.kv("witness_generators", w.subgroup.generator_string());
                let table: Vec<String> = w
                    .phi
                    .map()
                    .iter()
                    .enumerate()
                    .map(|(i, &h)| format!("e{}->{}", i + 1, w.iso[h]))
                    .collect();
                doc.kv("phi", table.join(" "));
                doc.human(format!("left {spec}-code: yes"));
                doc.human(format!("witness subgroup: {}", w.subgroup.generator_string()));
                doc.human(format!("bijection phi (coordinate -> {spec} label): {}", table.join(" ")));
            }
            None => doc.human(format!("left {spec}-code: no")),
        }
        return Ok(doc);
    }

    let report = classify::classify(&code, caps)?;
    doc.kv("paut_order", report.paut_order);
    doc.kv("is_left_group_code", report.is_left_group_code);
    let left: Vec<String> = report
        .left_witnesses
        .iter()
        .map(|w| format!("{}:{}", w.iso_name, w.group.generator_string()))
        .collect();
    doc.kv("left_witnesses", left.join("; "));
    doc.kv("is_group_code", report.is_group_code);
    let two: Vec<String> = report
        .two_sided_witnesses
        .iter()
        .map(|w| format!("{}:{}", w.iso_name, w.group.generator_string()))
        .collect();
    doc.kv("two_sided_witnesses", two.join("; "));
    doc.kv("is_abelian_group_code", report.is_abelian_group_code);
    doc.kv("is_cyclic_group_code", report.is_cyclic_group_code);
    for note in &report.notes {
        doc.kv("note", note);
    }
    doc.human(format!("left group code: {}", report.is_left_group_code));
    for w in &report.left_witnesses {
        doc.human(format!("  witness {} = <{}>", w.iso_name, w.group.generator_string()));
    }
    doc.human(format!("two-sided group code: {}", report.is_group_code));
    doc.human(format!("abelian group code: {}", report.is_abelian_group_code));
    doc.human(format!("cyclic group code: {}", report.is_cyclic_group_code));
    Ok(doc)
}

fn parse_location(field: &FiniteField, loc: &str) -> Result<Vec<ProjPoint>, Error> {
    match loc {
        "F" => Ok(alpha_f(field)),
        "Fstar" => Ok(alpha_f_star(field)),
        "P1" => Ok(proj_line(field)),
        list => list
            .split(',')
            .map(|t| ProjPoint::parse(t, field))
            .collect(),
    }
}

fn cmd_cauchy(args: &CauchyArgs, caps: &Caps) -> Result<Doc, Error> {
    let spec = match &args.file {
        Some(path) => CauchySpec::parse(&read_file(path)?)?,
        None => {
            let (q, k, loc, scale) = match (&args.q, args.k, &args.loc, &args.scale) {
                (Some(q), Some(k), Some(loc), Some(scale)) => (q, k, loc, scale),
                _ => {
                    return Err(Error::InvalidParameter(
                        "cauchy needs a spec file or all of --q --k --loc --scale".into(),
                    ))
                }
            };
            let field = FiniteField::parse_label(q)?;
            let alpha = parse_location(&field, loc)?;
            let f = parse_scaling(&field, &alpha, &scale.replace(',', " "))?;
            CauchySpec::new(field, k, alpha, f)?
        }
    };
    let field = spec.field.clone();
    let q = field.q() as usize;
    let n = spec.n();
    let k = spec.k;
    let code = spec.code()?;

    let mut doc = Doc::new("cauchy");
    doc.kv("field", field.label());
    doc.kv("n", n);
    doc.kv("k", k);
    let dist = code.min_distance(caps)?;
    doc.kv("min_distance", dist);
    doc.kv("mds", dist == n - k + 1);
    doc.human(format!(
        "Cauchy code over F_{}: n={n}, k={k}, d={dist} ({})",
        field.label(),
        if dist == n - k + 1 { "MDS" } else { "NOT MDS" }
    ));

    if (2..=n.saturating_sub(2)).contains(&k) {
        let group = cauchy::paut_via_gamma(&spec, caps)?;
        doc.kv("paut_order", group.order());
        doc.kv("paut_generators", group.generator_string());
        doc.human(format!(
            "PAut (via the stabilizer isomorphism) has order {}: {}",
            group.order(),
            group.generator_string()
        ));
    }

    // length dispatch
    if n == q && (2..=n - 2).contains(&k) {
        let r = cauchy::classify_length_q(&spec, caps)?;
        doc.kv("length_class", "q");
        doc.kv("is_left_group_code", r.is_left_group_code);
        if let Some(w) = &r.witness {
            doc.kv("witness_type", w);
        }
        doc.human(format!(
            "length q: left group code = {}{}",
            r.is_left_group_code,
            r.witness
                .as_deref()
                .map(|w| format!(", all witnesses elementary abelian {w}"))
                .unwrap_or_default()
        ));
    } else if n + 1 == q && (2..=q - 3).contains(&k) {
        let r = cauchy::classify_length_qm1(&spec, caps)?;
        doc.kv("length_class", "q-1");
        doc.kv("is_left_group_code", r.is_left_group_code);
        doc.kv("cyclic", r.is_cyclic_group_code);
        doc.kv("dihedral", r.is_dihedral_group_code);
        if let Some(m) = r.cyclic_m {
            doc.kv("f_m", m);
        }
        if let Some((m, m2)) = r.dihedral_mm {
            doc.kv("f_mm", format!("{m} {m2}"));
        }
        doc.human(format!(
            "length q-1: left group code = {}; cyclic = {}; dihedral = {}",
            r.is_left_group_code, r.is_cyclic_group_code, r.is_dihedral_group_code
        ));
    } else if n + 2 == q && (2..=n - 2).contains(&k) {
        doc.kv("length_class", "q-2");
        let group = cauchy::paut_via_gamma(&spec, caps)?;
        let subs = classify::regular_subgroups(&group, caps)?;
        doc.kv("is_left_group_code", !subs.is_empty());
        doc.kv("q_admissible", 6 % n == 0);
        doc.human(format!(
            "length q-2: left group code = {} (a regular action forces q = 8)",
            !subs.is_empty()
        ));
    } else if k == 1 || k + 1 == n {
        let v = if k == 1 {
            code.rows()[0].clone()
        } else {
            code.dual().rows()[0].clone()
        };
        let r = classify::classify_one_dim(&field, &v)?;
        doc.kv("length_class", "dim-1 boundary");
        doc.kv("is_left_group_code", r.is_left_group_code);
        doc.human(format!(
            "k on the one-dimensional boundary: left group code = {} (h={}, s={})",
            r.is_left_group_code, r.h, r.s
        ));
    }

    if let Some(out) = &args.out {
        std::fs::write(out, code.to_file_string()).map_err(|e| {
            Error::InvalidParameter(format!("cannot write '{out}': {e}"))
        })?;
        doc.kv("generator_file", out);
    } else {
        doc.kv("generator_matrix", code.to_file_string().replace('\n', ";"));
        doc.human(format!("generator matrix:\n{}", code.to_file_string()));
    }
    Ok(doc)
}

fn cmd_onedim(field_label: &str, vector: &str, groups: &[String], caps: &Caps) -> Result<Doc, Error> {
    let field = FiniteField::parse_label(field_label)?;
    let v: Vec<_> = vector
        .split(',')
        .map(|t| {
            let rep: u32 = t
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("bad vector entry '{t}'")))?;
            field.element(rep)
        })
        .collect::<Result<_, _>>()?;
    let report = classify::classify_one_dim(&field, &v)?;
    let mut doc = Doc::new("onedim");
    doc.kv("field", field.label());
    doc.kv("n", report.n);
    doc.kv("is_left_group_code", report.is_left_group_code);
    if report.is_left_group_code {
        doc.kv("h", report.h);
        doc.kv("s", report.s);
        doc.kv("u", report.u.unwrap().rep());
        doc.kv("xi", report.xi.unwrap().rep());
        doc.human(format!(
            "left group code: yes; entries are u*xi^j with u={}, xi={}, h={}, each value {} times",
            report.u.unwrap().rep(),
            report.xi.unwrap().rep(),
            report.h,
            report.s
        ));
    } else {
        doc.human("left group code: no".to_string());
    }
    for spec in groups {
        let g = groupalg::group_from_spec(spec)?;
        let ok = report.admits(&g)?;
        doc.kv(format!("admits_{spec}"), ok);
        doc.human(format!("group {spec} admissible: {ok}"));
    }
    let _ = caps;
    Ok(doc)
}

fn cmd_ideals(group: &str, field_label: &str, two_sided: bool, caps: &Caps) -> Result<Doc, Error> {
    let g = groupalg::group_from_spec(group)?;
    let field = FiniteField::parse_label(field_label)?;
    let alg = GroupAlgebra::new(g.clone(), field.clone());
    let sided = if two_sided { Sided::TwoSided } else { Sided::Left };
    let ideals = groupalg::enumerate_ideals(&alg, sided, caps)?;
    let mut doc = Doc::new("ideals");
    doc.kv("group", group);
    doc.kv("field", field.label());
    doc.kv("sided", if two_sided { "two" } else { "left" });
    doc.kv("count", ideals.len());
    doc.human(format!(
        "{} {} ideals of F_{}[{}]",
        ideals.len(),
        if two_sided { "two-sided" } else { "left" },
        field.label(),
        group
    ));
    for (i, ideal) in ideals.iter().enumerate() {
        doc.kv(format!("ideal_{i}_dim"), ideal.dim());
        let block = format!(
            "# ideal {i} of F_{}[{}], phi = identity labeling\n{}",
            field.label(),
            group,
            ideal.to_file_string()
        );
        doc.kv(format!("ideal_{i}"), ideal.to_file_string().replace('\n', ";"));
        doc.human(block);
    }
    Ok(doc)
}

fn parse_labels(s: &str) -> Result<Vec<usize>, Error> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidSpec(format!("bad label '{t}'")))
        })
        .collect()
}

/// Deterministic automatic choice of abelian subgroups A, B with AB = G:
/// the first pair, in subgroup enumeration order, minimizing |A| + |B|.
fn find_ab_factorization(g: &groupalg::FiniteGroupTable) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let subs = g.all_subgroups();
    let abelian: Vec<&Vec<usize>> = subs.iter().filter(|s| g.is_abelian_subset(s)).collect();
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    for a in &abelian {
        for b in &abelian {
            if a.len() * b.len() < n {
                continue;
            }
            let mut covered = vec![false; n];
            let mut count = 0;
            for &x in a.iter() {
                for &y in b.iter() {
                    let p = g.mul(x, y);
                    if !covered[p] {
                        covered[p] = true;
                        count += 1;
                    }
                }
            }
            if count == n {
                let score = a.len() + b.len();
                if best.as_ref().map(|(s, _, _)| score < *s).unwrap_or(true) {
                    best = Some((score, (*a).clone(), (*b).clone()));
                }
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

fn cmd_check_ab(
    group: &str,
    field_label: &str,
    a_gens: Option<&str>,
    b_gens: Option<&str>,
    caps: &Caps,
) -> Result<Doc, Error> {
    let g = groupalg::group_from_spec(group)?;
    let field = FiniteField::parse_label(field_label)?;
    let (a, b) = match (a_gens, b_gens) {
        (Some(a), Some(b)) => (parse_labels(a)?, parse_labels(b)?),
        (None, None) => find_ab_factorization(&g).ok_or_else(|| {
            Error::Precondition(format!("no abelian factorization {group} = AB found"))
        })?,
        _ => {
            return Err(Error::InvalidParameter(
                "give both --a-gens and --b-gens or neither".into(),
            ))
        }
    };
    let alg = GroupAlgebra::new(g, field.clone());
    let report = groupalg::check_ab_theorem(&alg, &a, &b, caps)?;
    let mut doc = Doc::new("check-ab");
    doc.kv("group", group);
    doc.kv("field", field.label());
    doc.kv("a_order", report.a_order);
    doc.kv("b_order", report.b_order);
    doc.kv("ideal_count", report.ideal_count);
    doc.kv("violations", report.violations.len());
    doc.human(format!(
        "G = {group} with |A| = {}, |B| = {}: {} two-sided ideals, {} violations",
        report.a_order,
        report.b_order,
        report.ideal_count,
        report.violations.len()
    ));
    for (i, (dim, witness)) in report.outcomes.iter().enumerate() {
        doc.kv(
            format!("ideal_{i}"),
            format!("dim={dim} abelian_witness={}", witness.as_deref().unwrap_or("NONE")),
        );
        doc.human(format!(
            "  ideal {i}: dim {dim}, abelian witness {}",
            witness.as_deref().unwrap_or("NONE")
        ));
    }
    Ok(doc)
}
