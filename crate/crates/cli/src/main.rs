//! quadlie: exact-arithmetic analysis of Lie algebras over Q, Abelian
//! extensions from cocycle data, invariant-metric decisions, and the
//! Heisenberg-quotient classification tables.

use clap::{Parser, Subcommand};
use quadlie_cli::doc::{
    self, from_json_str, to_json_string, AlgebraDocument, DocError, DoubleExtensionDocument,
    ExtensionDocument,
};
use quadlie_cli::report;
use quadlie::exactlin::Subspace;
use quadlie::extension::ExtensionError;
use quadlie::heis::{self, FamilyTag};
use quadlie::quadratic::{
    self, double_extension, invariance_violation, metric_exists, perp, BilinearForm,
    DoubleExtensionData, MetricFailure,
};
use report::{fmt_matrix, fmt_subspace, fmt_subspace_named, Report};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_ALGEBRA: u8 = 3;
const EXIT_FAILED_CHECK: u8 = 4;

#[derive(Debug)]
enum CliError {
    Parse(String),
    InvalidAlgebra(String),
    FailedCheck(String),
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Parse(m) => CliError::Parse(m),
            DocError::InvalidAlgebra(m) => CliError::InvalidAlgebra(m),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::InvalidAlgebra(_) => EXIT_INVALID_ALGEBRA,
            CliError::FailedCheck(_) => EXIT_FAILED_CHECK,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::InvalidAlgebra(m) | CliError::FailedCheck(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse-error",
            CliError::InvalidAlgebra(_) => "invalid-algebra",
            CliError::FailedCheck(_) => "failed-check",
        }
    }
}

#[derive(Parser)]
#[command(
    name = "quadlie",
    about = "Exact rational computations for Lie algebras: canonical Abelian ideals, \
             Abelian extensions, invariant metrics, Heisenberg classification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Series, canonical ideals and (optional) metric identities of an algebra document
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Emit only the machine-readable section
        #[arg(long)]
        machine: bool,
    },
    /// Build the Lie algebra defined by an extension document
    Extend {
        #[arg(long)]
        input: PathBuf,
        /// Write the resulting algebra document here (otherwise stdout)
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        machine: bool,
    },
    /// Decide invariant-metric existence for an extension document
    CheckMetric {
        #[arg(long)]
        input: PathBuf,
        /// Candidate form on a: "identity" or a path to a JSON array of gram rows
        #[arg(long, default_value = "identity")]
        b_a: String,
        #[arg(long)]
        machine: bool,
    },
    /// The nine-family catalog, the four metric families, and the splitting reports
    Classify {
        /// Dimension of the trivial module (at least 3)
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long)]
        machine: bool,
    },
    /// Build a double extension from (V, B_V, D) data
    DoubleExtension {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        machine: bool,
    },
    /// Write the bundled example documents into a directory
    #[command(hide = true)]
    EmitFixtures {
        #[arg(long)]
        output: PathBuf,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { input, machine } => cmd_analyze(&input, machine),
        Command::Extend { input, output, machine } => cmd_extend(&input, output.as_deref(), machine),
        Command::CheckMetric { input, b_a, machine } => cmd_check_metric(&input, &b_a, machine),
        Command::Classify { r, machine } => cmd_classify(r, machine),
        Command::DoubleExtension { input, output, machine } => {
            cmd_double_extension(&input, output.as_deref(), machine)
        }
        Command::EmitFixtures { output } => cmd_emit_fixtures(&output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error ({}): {}", e.kind(), e.message());
            ExitCode::from(e.code())
        }
    }
}

fn cmd_analyze(input: &Path, machine: bool) -> Result<(), CliError> {
    let docu: AlgebraDocument = from_json_str(&read_file(input)?)?;
    let (g, form) = docu.to_lie_algebra()?;
    let names = g.basis_names().to_vec();
    let mut rep = Report::new();
    rep.line(format!("algebra {:?}: dimension {}", docu.name, g.dim()));
    rep.line("jacobi: ok".to_string());
    rep.kv("name", &docu.name);
    rep.kv("dim", g.dim());
    rep.kv("jacobi", "ok");

    let series = g.series();
    let desc_dims: Vec<String> = series.descending.iter().map(|s| s.dim().to_string()).collect();
    let der_dims: Vec<String> = series.derived.iter().map(|s| s.dim().to_string()).collect();
    let dc_dims: Vec<String> = series.derived_central.iter().map(|s| s.dim().to_string()).collect();
    rep.line(format!("descending central series dims: {}", desc_dims.join(" > ")));
    rep.line(format!("derived series dims: {}", der_dims.join(" > ")));
    rep.line(format!("derived central series dims: {}", dc_dims.join(" < ")));
    rep.line(format!("m1 = {}, m2 = {}, m = {}", series.m1, series.m2, series.m));
    rep.kv("series.descending.dims", format!("[{}]", desc_dims.join(", ")));
    rep.kv("series.derived.dims", format!("[{}]", der_dims.join(", ")));
    rep.kv("series.derived_central.dims", format!("[{}]", dc_dims.join(", ")));
    rep.kv("series.m1", series.m1);
    rep.kv("series.m2", series.m2);
    rep.kv("series.m", series.m);

    rep.kv("abelian", g.is_abelian());
    rep.kv("solvable", g.is_solvable());
    rep.kv("nilpotent", g.is_nilpotent());
    rep.line(format!(
        "abelian: {}, solvable: {}, nilpotent: {}",
        g.is_abelian(),
        g.is_solvable(),
        g.is_nilpotent()
    ));

    let (ideal_i, ideal_j) = g
        .canonical_ideals()
        .map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
    rep.line(format!("i(g) = {}", fmt_subspace_named(&ideal_i, &names)));
    rep.line(format!("j(g) = {}", fmt_subspace_named(&ideal_j, &names)));
    rep.kv("ideal_i.dim", ideal_i.dim());
    rep.kv("ideal_i.basis", fmt_subspace(&ideal_i));
    rep.kv("ideal_j.dim", ideal_j.dim());
    rep.kv("ideal_j.basis", fmt_subspace(&ideal_j));
    rep.kv("ideal_i.is_ideal", g.is_ideal(&ideal_i));
    rep.kv("ideal_j.is_ideal", g.is_ideal(&ideal_j));
    rep.kv("ideal_i_subset_j", ideal_j.contains(&ideal_i));
    let j_abelian = g.bracket_subspaces(&ideal_j, &ideal_j).is_zero();
    rep.kv("ideal_j.abelian", j_abelian);

    match g.has_abelian_descending_ideal() {
        Some(l) => {
            rep.line(format!("smallest l with [g^l, g^l] = 0: {l}"));
            rep.kv("abelian_descending_l", l);
        }
        None => {
            rep.line("no descending central term is Abelian".to_string());
            rep.kv("abelian_descending_l", "none");
        }
    }

    if let Some(b) = form {
        let nondeg = b.is_nondegenerate();
        let violation = invariance_violation(&g, &b);
        rep.line(format!(
            "form: nondegenerate = {nondeg}, invariant = {}",
            violation.is_none()
        ));
        rep.kv("form.nondegenerate", nondeg);
        rep.kv("form.invariant", violation.is_none());
        if let Some((i, j, k)) = violation {
            rep.line(format!(
                "  first invariance violation at ({}, {}, {})",
                names[i], names[j], names[k]
            ));
            rep.kv("form.first_violation", format!("({i}, {j}, {k})"));
        }
        if nondeg {
            let mut perp_ok = true;
            for l in 1..=series.m {
                let lhs = perp(&b, &series.descending_term(l)).expect("nondegenerate");
                let ok = lhs == series.derived_central_term(l)
                    && g.centralizer_of(&series.descending_term(l - 1))
                        == series.derived_central_term(l);
                rep.kv(format!("perp.g{l}_equals_C{l}"), ok);
                perp_ok &= ok;
            }
            rep.line(format!("perp(g^l) = C_l(g) = centralizer(g^(l-1)) for all l: {perp_ok}"));
            let perp_i = perp(&b, &ideal_i).expect("nondegenerate");
            rep.kv("perp.i_equals_j", perp_i == ideal_j);
            rep.line(format!("perp(i(g)) = j(g): {}", perp_i == ideal_j));
            if violation.is_none() && j_abelian {
                let bracket_in_i =
                    ideal_i.contains(&g.bracket_subspaces(&Subspace::full(g.dim()), &ideal_j));
                rep.kv("bracket_g_j_in_i", bracket_in_i);
                rep.line(format!("[g, j(g)] contained in i(g): {bracket_in_i}"));
            }
        }
    }
    rep.print(machine);
    Ok(())
}

fn extension_error_to_cli(e: ExtensionError) -> CliError {
    let named = match &e {
        ExtensionError::DLambdaNonzero(t, v) => {
            format!("condition \"d lambda = 0\" fails at {t:?} with value {v:?}")
        }
        ExtensionError::DMuNonzero(t, v) => {
            format!("condition \"d mu + e_phi(lambda) = 0\" fails at {t:?} with value {v:?}")
        }
        ExtensionError::DPhiNonzero(t) => format!("condition \"d phi = 0\" fails at {t:?}"),
        other => other.to_string(),
    };
    CliError::InvalidAlgebra(named)
}

fn cmd_extend(input: &Path, output: Option<&Path>, machine: bool) -> Result<(), CliError> {
    let docu: ExtensionDocument = from_json_str(&read_file(input)?)?;
    let (data, _) = docu.to_extension_data()?;
    let built = data.build().map_err(extension_error_to_cli)?;
    let out_doc = AlgebraDocument::from_lie_algebra(
        &format!("{}-extension", docu.h.name),
        &built,
        None,
    );
    let json = to_json_string(&out_doc);
    let mut rep = Report::new();
    rep.line(format!(
        "built extension of {:?}: dimension {} = {} + {} + {}",
        docu.h.name,
        built.dim(),
        data.h.dim(),
        data.dim_a,
        data.dim_i
    ));
    rep.kv("dim", built.dim());
    rep.kv("valid", true);
    rep.kv("jacobi", "ok");
    match output {
        Some(path) => {
            write_file(path, &json)?;
            rep.line(format!("wrote {}", path.display()));
            rep.kv("output", path.display().to_string());
            rep.print(machine);
        }
        None => {
            print!("{json}");
        }
    }
    Ok(())
}

fn resolve_b_a(
    spec: &str,
    doc_b_a: Option<BilinearForm>,
    dim_a: usize,
) -> Result<BilinearForm, CliError> {
    match spec {
        "identity" => Ok(doc_b_a.unwrap_or_else(|| BilinearForm::identity(dim_a))),
        path => {
            let rows: Vec<Vec<String>> = from_json_str(&read_file(Path::new(path))?)?;
            let gram = doc::parse_matrix(&rows, dim_a, dim_a, "b_a")?;
            BilinearForm::new(gram).map_err(|_| CliError::Parse("b_a is not symmetric".into()))
        }
    }
}

fn cmd_check_metric(input: &Path, b_a_spec: &str, machine: bool) -> Result<(), CliError> {
    let docu: ExtensionDocument = from_json_str(&read_file(input)?)?;
    let (data, doc_b_a) = docu.to_extension_data()?;
    data.validate().map_err(extension_error_to_cli)?;
    let b_a = resolve_b_a(b_a_spec, doc_b_a, data.dim_a)?;
    let mut rep = Report::new();
    match metric_exists(&data, &b_a) {
        Ok(cert) => {
            let built = data.build().map_err(extension_error_to_cli)?;
            let invariant = quadratic::is_invariant(&built, &cert.pullback_metric);
            rep.line("invariant metric exists for the supplied b_a".to_string());
            let tau_rows: Vec<Vec<String>> = (0..data.h.dim())
                .map(|j| cert.tau.get(&[j]).iter().map(|x| x.to_string()).collect())
                .collect();
            rep.line(format!("tau (shift making lambda match lambda_phi): {tau_rows:?}"));
            rep.line(format!("pullback metric gram: {}", fmt_matrix(&cert.pullback_metric.gram)));
            rep.line(format!(
                "verified invariant on the built algebra: {invariant}, nondegenerate: {}",
                cert.pullback_metric.is_nondegenerate()
            ));
            rep.kv("metric.exists", true);
            rep.kv("metric.gram", fmt_matrix(&cert.metric.gram));
            rep.kv("metric.pullback_gram", fmt_matrix(&cert.pullback_metric.gram));
            rep.kv("metric.pullback_invariant", invariant);
            rep.print(machine);
            Ok(())
        }
        Err(MetricFailure::Precondition(p)) => {
            Err(CliError::InvalidAlgebra(format!("metric precondition failed: {p}")))
        }
        Err(failure) => {
            rep.line(format!("no invariant metric for the supplied b_a: {failure}"));
            rep.kv("metric.exists", false);
            rep.kv("metric.failure", short_failure(&failure));
            rep.print(machine);
            Err(CliError::FailedCheck(failure.to_string()))
        }
    }
}

fn short_failure(failure: &MetricFailure) -> String {
    match failure {
        MetricFailure::B1NotCyclic(t) => format!("b1 {t:?}"),
        MetricFailure::B2NotAlternating(p) => format!("b2-not-alternating {p:?}"),
        MetricFailure::B2NoSolution => "b2-no-solution".to_string(),
        MetricFailure::Precondition(p) => format!("precondition {p}"),
    }
}

fn family_phi_constraint(tag: FamilyTag) -> &'static str {
    match tag {
        FamilyTag::F11 => {
            "phi1_11 + phi2_12 - phi1_33 = 0, phi1_21 + phi2_22 - phi2_33 = 0, phi1_31 + phi2_32 = 0"
        }
        FamilyTag::F21 | FamilyTag::F22 | FamilyTag::F23 => "phi1 column 1 = 0",
        FamilyTag::F24 => "phi1_11 = -1, phi1_21 = 0, phi1_31 = 0",
        _ => "phi free (phi3 always determined by phi1, phi2)",
    }
}

fn cmd_classify(r: usize, machine: bool) -> Result<(), CliError> {
    if r < 3 {
        return Err(CliError::Parse(format!("--r must be at least 3, got {r}")));
    }
    let mut rep = Report::new();
    rep.line(format!("classification tables for r = {r}"));
    rep.line(String::new());
    rep.line("nine canonical families:".to_string());
    let families = heis::catalog();
    rep.kv("families.count", families.len());
    for family in &families {
        let he = family.representative(r);
        let param = family
            .default_parameter()
            .map(|p| format!(" (parameter {p})"))
            .unwrap_or_default();
        rep.line(format!(
            "  {}: lambda {:?}, mu = {}, {}{}",
            family.tag,
            family.lambda_form(),
            fmt_matrix(&he.mu),
            family_phi_constraint(family.tag),
            param
        ));
        rep.kv(format!("family.{}.lambda", family.tag), format!("{:?}", family.lambda_form()));
        rep.kv(format!("family.{}.mu", family.tag), fmt_matrix(&he.mu));
        let tag = heis::classify(&he).map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
        rep.kv(format!("family.{}.reclassifies", family.tag), tag);
    }
    rep.line(String::new());
    rep.line("invariant-metric decision with b_a = identity:".to_string());
    let mc = heis::metric_catalog(r).map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
    rep.kv("metric.count", mc.admitted.len());
    let tags: Vec<String> = mc.admitted.iter().map(|(t, _, _)| t.to_string()).collect();
    rep.kv("metric.tags", format!("[{}]", tags.join(", ")));
    for (tag, _, _) in &mc.admitted {
        rep.line(format!("  family {tag}: admits an invariant metric"));
    }
    for (tag, failure) in &mc.excluded {
        rep.line(format!("  family {tag}: excluded ({failure})"));
        rep.kv(format!("metric.excluded.{tag}"), short_failure(failure));
    }
    rep.line(String::new());
    rep.line("orthogonal splitting of the metric families:".to_string());
    for (tag, he, _) in &mc.admitted {
        let sr = heis::split_check(he).map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
        rep.line(format!(
            "  family {tag}: central nondegenerate ideal of dim {} (maximal {}), remainder classifies as {}",
            sr.central_ideal.dim(),
            sr.maximal_central_nondeg_dim,
            sr.remainder_tag
        ));
        rep.kv(format!("split.{tag}.central_dim"), sr.central_ideal.dim());
        rep.kv(format!("split.{tag}.maximal_central_dim"), sr.maximal_central_nondeg_dim);
        rep.kv(format!("split.{tag}.remainder"), sr.remainder_tag);
    }
    rep.print(machine);
    Ok(())
}

fn cmd_double_extension(input: &Path, output: Option<&Path>, machine: bool) -> Result<(), CliError> {
    let docu: DoubleExtensionDocument = from_json_str(&read_file(input)?)?;
    let (b_v, d) = docu.parse_parts()?;
    let dd = DoubleExtensionData::new(b_v, d)
        .map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
    let (g, b) = double_extension(&dd).map_err(|e| CliError::InvalidAlgebra(e.to_string()))?;
    let out_doc = AlgebraDocument::from_lie_algebra("double-extension", &g, Some(&b));
    let json = to_json_string(&out_doc);
    let mut rep = Report::new();
    rep.line(format!("double extension of dimension {} with invariant metric", g.dim()));
    rep.kv("dim", g.dim());
    rep.kv("invariant", quadratic::is_invariant(&g, &b));
    match output {
        Some(path) => {
            write_file(path, &json)?;
            rep.line(format!("wrote {}", path.display()));
            rep.kv("output", path.display().to_string());
            rep.print(machine);
        }
        None => print!("{json}"),
    }
    Ok(())
}

/// The bundled documents: the example double extension (input and resulting
/// algebra), the case 1.1 extension, and the nine family templates at r = 3.
fn fixture_set() -> Vec<(String, String)> {
    let mut out = Vec::new();
    // example double extension: unit vector v1, hyperbolic pair (v2, v3),
    // skew map D(v2) = v2, D(v3) = -v3
    let dd_doc = DoubleExtensionDocument {
        dim_v: 3,
        b_v: vec![
            vec!["1".into(), "0".into(), "0".into()],
            vec!["0".into(), "0".into(), "1".into()],
            vec!["0".into(), "1".into(), "0".into()],
        ],
        d: vec![
            vec!["0".into(), "0".into(), "0".into()],
            vec!["0".into(), "1".into(), "0".into()],
            vec!["0".into(), "0".into(), "-1".into()],
        ],
    };
    out.push(("example-3-2-input.json".to_string(), to_json_string(&dd_doc)));
    let (g, b) = quadlie::quadratic::example_three_two();
    let alg = AlgebraDocument::from_lie_algebra("example-3-2", &g, Some(&b));
    out.push(("example-3-2.json".to_string(), to_json_string(&alg)));
    // case 1.1 at r = 3
    let case11 = heis::quadratic_representative(FamilyTag::F11, 3).expect("case 1.1");
    let ext = ExtensionDocument::from_extension_data(
        &case11.to_extension_data(),
        true,
        Some(&BilinearForm::identity(3)),
    );
    out.push(("case-1-1.json".to_string(), to_json_string(&ext)));
    // the nine family templates at r = 3
    for family in heis::catalog() {
        let he = family.representative(3);
        let ext = ExtensionDocument::from_extension_data(&he.to_extension_data(), true, None);
        let name = format!("family-{}.json", family.tag.to_string().replace('.', "-"));
        out.push((name, to_json_string(&ext)));
    }
    out
}

fn cmd_emit_fixtures(output: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(output)
        .map_err(|e| CliError::Parse(format!("cannot create {}: {e}", output.display())))?;
    for (name, contents) in fixture_set() {
        write_file(&output.join(&name), &contents)?;
        println!("wrote {}", output.join(&name).display());
    }
    Ok(())
}
