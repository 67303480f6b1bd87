//! Batch front end: load a structure bundle, run verifications,
//! constructions or cohomology, and emit human-readable or machine-stable
//! reports. Exit codes: 0 all checks pass, 1 some check failed, 2 the
//! input could not be parsed or validated.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bundle::{alternating_to_json, rinehart_to_json, Bundle};
use crate::cohomology::{Alternation, Complex};
use crate::error::Error;
use crate::exact::Matrix;
use crate::rep::{adjoint_kernel_rep, regular_rep, trivial_rep, Representation};
use crate::report::{Check, Report, Status};

#[derive(Parser, Debug)]
#[command(
    name = "nlra",
    about = "Exact verification, cohomology, extensions and crossed modules \
             of finite-dimensional n-Lie Rinehart algebras given by \
             structure-constant bundles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify every axiom of the bundle, itemized with witnesses.
    Verify(VerifyArgs),
    /// Cochain space, cocycle, coboundary and cohomology dimensions.
    Cohomology(CohomologyArgs),
    /// Build an extension or enlargement and verify the output.
    Extend(ExtendArgs),
    /// Crossed-module checks and the degree-3 invariant.
    Crossed(CrossedArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Bundle file (JSON).
    pub bundle: PathBuf,
    /// Skip the A-linearity of the anchor (weak structures).
    #[arg(long)]
    pub weak: bool,
    /// Machine-stable JSON report on stdout.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    /// One-dimensional carrier through the unit coordinate, zero action.
    Trivial,
    /// The base algebra itself with the anchor acting.
    Anchor,
    /// The adjoint action on the anchor kernel.
    AdjointKernel,
    /// The representation block of the bundle.
    File,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    pub bundle: PathBuf,
    /// Cochain degree (1, 2 or 3).
    #[arg(long)]
    pub p: usize,
    #[arg(long, value_enum, default_value = "trivial")]
    pub coefficients: Coefficients,
    /// Also compute the fully alternating comparison mode and report its
    /// dimensions separately.
    #[arg(long)]
    pub strict_alternation: bool,
    /// Dump chosen representatives into the report.
    #[arg(long)]
    pub representatives: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtendMode {
    Central,
    Ttheta,
    Semidirect,
    Tensor,
    #[value(name = "append_a")]
    AppendA,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    pub bundle: PathBuf,
    #[arg(long, value_enum)]
    pub mode: ExtendMode,
    /// Auxiliary data file overriding the bundle's representation /
    /// theta / phi blocks.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Build the carrier even when the cocycle sweep fails, so the
    /// verification report localizes the failure.
    #[arg(long)]
    pub diagnostic: bool,
    /// Write the constructed bundle here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CrossedAction {
    Verify,
    H3,
    Equivalence,
}

#[derive(Args, Debug)]
pub struct CrossedArgs {
    pub bundle: PathBuf,
    #[arg(long, value_enum)]
    pub action: CrossedAction,
    /// For `equivalence`: a file with the second crossed bundle and the
    /// comparison maps `delta`, `gamma`.
    #[arg(long)]
    pub aux: Option<PathBuf>,
    /// Seed for the randomized section-independence certificates of `h3`.
    #[arg(long, default_value = "0")]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// The machine-readable command report.
#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub checks: Vec<Check>,
    pub numbers: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
    pub exit_code: i32,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            checks: Vec::new(),
            numbers: BTreeMap::new(),
            payload: None,
            exit_code: 0,
        }
    }

    fn absorb(&mut self, report: Report) {
        self.checks.extend(report.checks);
    }

    fn seal(mut self) -> Self {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            self.exit_code = 1;
        }
        self
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("{tag}  {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        for (k, v) in &self.numbers {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out.push_str(&format!("exit: {}\n", self.exit_code));
        out
    }
}

fn load_bundle(path: &Path) -> Result<Bundle, Error> {
    let text = std::fs::read_to_string(path)?;
    Bundle::from_json(&text)
}

fn coefficients_for(bundle: &Bundle, which: Coefficients) -> Result<Representation, Error> {
    match which {
        Coefficients::Trivial => trivial_rep(&bundle.rinehart),
        Coefficients::Anchor => Ok(regular_rep(&bundle.rinehart)),
        Coefficients::AdjointKernel => Ok(adjoint_kernel_rep(&bundle.rinehart)?.0),
        Coefficients::File => bundle
            .representation
            .clone()
            .ok_or_else(|| Error::Bundle("coefficients `file` need a representation block".into())),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CommandReport, Error> {
    let bundle = load_bundle(&args.bundle)?;
    let mut out = CommandReport::new("verify");
    out.absorb(bundle.rinehart.verify(args.weak));
    Ok(out.seal())
}

pub fn cmd_cohomology(args: &CohomologyArgs) -> Result<CommandReport, Error> {
    if !(1..=3).contains(&args.p) {
        return Err(Error::Bundle(format!(
            "degree p must be 1, 2 or 3, got {}",
            args.p
        )));
    }
    let bundle = load_bundle(&args.bundle)?;
    let rep = coefficients_for(&bundle, args.coefficients)?;
    let mut out = CommandReport::new("cohomology");
    let p = args.p;

    let run = |mode: Alternation, prefix: &str, out: &mut CommandReport| {
        let cx = Complex::new(&bundle.rinehart, &rep, mode);
        match cx.cohomology(p) {
            Ok(rep_h) => {
                out.checks.push(Check {
                    name: format!("{prefix}complex_assembled"),
                    status: Status::Pass,
                    witness: None,
                });
                out.numbers
                    .insert(format!("{prefix}C{p}_dim"), rep_h.dim_cochains as i64);
                out.numbers
                    .insert(format!("{prefix}Z{p}_dim"), rep_h.dim_cocycles as i64);
                out.numbers
                    .insert(format!("{prefix}B{p}_dim"), rep_h.dim_coboundaries as i64);
                out.numbers
                    .insert(format!("{prefix}H{p}_dim"), rep_h.dim_h as i64);
                if args.representatives {
                    let reps: Vec<serde_json::Value> = rep_h
                        .representatives
                        .iter()
                        .map(|c| cochain_to_json(&cx, c))
                        .collect();
                    let payload = out.payload.get_or_insert_with(|| json!({}));
                    payload
                        .as_object_mut()
                        .unwrap()
                        .insert(format!("{prefix}representatives"), json!(reps));
                }
            }
            Err(e) => {
                out.checks.push(Check {
                    name: format!("{prefix}a_multilinearity_preserved"),
                    status: Status::Fail,
                    witness: Some(json!({ "error": e.to_string() })),
                });
            }
        }
    };

    run(Alternation::Block, "", &mut out);
    if args.strict_alternation {
        run(Alternation::Strict, "strict_", &mut out);
    }
    Ok(out.seal())
}

fn cochain_to_json(cx: &Complex<'_>, c: &crate::cohomology::Cochain) -> serde_json::Value {
    // sparse entries [[block multi-indices...], z, target, "p/q"]
    let r = cx.structure();
    let nb = r.blocks().len();
    let p = c.degree();
    let mut rows = Vec::new();
    let key_count = nb.pow((p - 1) as u32);
    let mut blocks = vec![0usize; p - 1];
    for mut k in 0..key_count {
        for s in (0..p - 1).rev() {
            blocks[s] = k % nb;
            k /= nb;
        }
        for z in 0..r.dim() {
            let val = c.value(&blocks, z);
            for (t, x) in val.iter().enumerate() {
                if !num_traits::Zero::is_zero(x) {
                    let idx: Vec<&[usize]> = blocks
                        .iter()
                        .map(|&b| r.blocks().block(b).indices())
                        .collect();
                    rows.push(json!([idx, z, t, crate::exact::format_scalar(x)]));
                }
            }
        }
    }
    json!(rows)
}

pub fn cmd_extend(args: &ExtendArgs) -> Result<CommandReport, Error> {
    let mut bundle = load_bundle(&args.bundle)?;
    if let Some(data_path) = &args.data {
        // the data file is a bundle fragment: it reuses the main structure
        // but overrides the payload blocks
        let text = std::fs::read_to_string(data_path)?;
        let doc: serde_json::Value = serde_json::from_str(&text)?;
        let mut main: serde_json::Value = bundle.to_json();
        let main_obj = main.as_object_mut().unwrap();
        if let Some(obj) = doc.as_object() {
            for key in ["representation", "theta", "phi"] {
                if let Some(v) = obj.get(key) {
                    main_obj.insert(key.to_string(), v.clone());
                }
            }
        }
        bundle = Bundle::from_json(&serde_json::to_string(&main).unwrap())?;
    }
    let r = &bundle.rinehart;
    let mut out = CommandReport::new("extend");

    let constructed = match args.mode {
        ExtendMode::Central => {
            let phi = bundle
                .phi
                .as_ref()
                .ok_or_else(|| Error::Bundle("central extension needs a phi block".into()))?;
            let mut checks = crate::ext::check_phi_a_multilinear(r, phi);
            checks.merge(crate::ext::check_central_cocycle(r, phi));
            let ok = checks.passed();
            out.absorb(checks);
            if ok || args.diagnostic {
                Some(crate::ext::central_extend_unchecked(r, phi))
            } else {
                None
            }
        }
        ExtendMode::Ttheta => {
            let rep = bundle.representation.as_ref().ok_or_else(|| {
                Error::Bundle("T_theta extension needs a representation block".into())
            })?;
            let theta = bundle
                .theta
                .as_ref()
                .ok_or_else(|| Error::Bundle("T_theta extension needs a theta block".into()))?;
            out.absorb(crate::rep::verify_representation(r, rep));
            let mut checks = crate::ext::check_theta_a_multilinear(r, rep, theta);
            checks.merge(crate::ext::check_2cocycle_module(r, rep, theta));
            let ok = checks.passed();
            out.absorb(checks);
            if ok || args.diagnostic {
                Some(crate::ext::t_theta_extend_unchecked(r, rep, theta)?)
            } else {
                None
            }
        }
        ExtendMode::Semidirect => {
            let rep = bundle.representation.as_ref().ok_or_else(|| {
                Error::Bundle("semidirect product needs a representation block".into())
            })?;
            out.absorb(crate::rep::verify_representation(r, rep));
            Some(crate::rep::semidirect(r, rep)?)
        }
        ExtendMode::Tensor => Some(r.tensor_extend()?),
        ExtendMode::AppendA => Some(r.append_a()?),
    };

    if let Some(big) = &constructed {
        out.numbers.insert("output_dim".into(), big.dim() as i64);
        let mut verify = Report::new();
        verify.merge_prefixed("output", big.verify(false));
        out.absorb(verify);
        if let Some(path) = &args.emit {
            let doc = rinehart_to_json(big);
            std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")?;
        }
        out.payload = Some(rinehart_to_json(big));
    }
    Ok(out.seal())
}

pub fn cmd_crossed(args: &CrossedArgs) -> Result<CommandReport, Error> {
    let bundle = load_bundle(&args.bundle)?;
    let r = &bundle.rinehart;
    let x = bundle
        .crossed
        .as_ref()
        .ok_or_else(|| Error::Bundle("no crossed block in the bundle".into()))?;
    let mut out = CommandReport::new("crossed");

    match args.action {
        CrossedAction::Verify => {
            out.absorb(crate::crossed::verify_crossed(r, x));
            out.absorb(crate::crossed::check_structure_maps(r, x)?);
        }
        CrossedAction::H3 => {
            if r.arity() != 3 {
                return Err(Error::AritySupport(r.arity()));
            }
            match crate::crossed::h_class(r, x, None, None) {
                Ok(trace) => {
                    out.checks.push(Check {
                        name: "h_values_in_kernel".into(),
                        status: Status::Pass,
                        witness: None,
                    });
                    out.checks.push(Check {
                        name: "delta3_h_zero".into(),
                        status: if trace.square_zero {
                            Status::Pass
                        } else {
                            Status::Fail
                        },
                        witness: (!trace.square_zero).then(|| json!({})),
                    });
                    out.numbers
                        .insert("kernel_dim".into(), trace.cokernel.kernel.dim() as i64);
                    out.numbers
                        .insert("cokernel_dim".into(), trace.cokernel.quotient.dim() as i64);
                    out.numbers
                        .insert("class_zero".into(), i64::from(trace.class_zero));
                    let kc = &trace.cokernel;
                    let cx = Complex::new(&kc.quotient, &kc.outer, Alternation::Block);
                    let mut payload = json!({
                        "beta": alternating_to_json(&trace.beta),
                        "h": cochain_to_json(&cx, &trace.h),
                        "h_zero": trace.h.is_zero(),
                    });
                    if let Some(cert) = &trace.certificate {
                        payload
                            .as_object_mut()
                            .unwrap()
                            .insert("coboundary_certificate".into(), cochain_to_json(&cx, cert));
                    }
                    // seeded section-independence certificates
                    let mut all_equal = true;
                    for k in 0..5u64 {
                        let (s1, g1) = crate::crossed::random_sections(r, x, args.seed + 2 * k)?;
                        let (s2, g2) =
                            crate::crossed::random_sections(r, x, args.seed + 2 * k + 1)?;
                        let cmp = crate::crossed::h_class_section_independence(
                            r,
                            x,
                            Some(s1),
                            Some(g1),
                            Some(s2),
                            Some(g2),
                        )?;
                        all_equal &= cmp.classes_equal;
                    }
                    out.checks.push(Check {
                        name: "section_independence".into(),
                        status: if all_equal {
                            Status::Pass
                        } else {
                            Status::Fail
                        },
                        witness: (!all_equal).then(|| json!({"seed": args.seed})),
                    });
                    out.payload = Some(payload);
                }
                Err(e) => {
                    out.checks.push(Check {
                        name: "h_values_in_kernel".into(),
                        status: Status::Fail,
                        witness: Some(json!({ "error": e.to_string() })),
                    });
                }
            }
        }
        CrossedAction::Equivalence => {
            let aux_path = args
                .aux
                .as_ref()
                .ok_or_else(|| Error::Bundle("equivalence needs --aux".into()))?;
            let text = std::fs::read_to_string(aux_path)?;
            let doc: serde_json::Value = serde_json::from_str(&text)?;
            let obj = doc
                .as_object()
                .ok_or_else(|| Error::Bundle("aux: expected an object".into()))?;
            let second = obj
                .get("bundle")
                .ok_or_else(|| Error::Bundle("aux: missing `bundle`".into()))?;
            let second = Bundle::from_json(&serde_json::to_string(second)?)?;
            let x2 = second
                .crossed
                .as_ref()
                .ok_or_else(|| Error::Bundle("aux bundle has no crossed block".into()))?;
            let delta = parse_aux_matrix(obj, "delta")?;
            let gamma = parse_aux_matrix(obj, "gamma")?;
            out.absorb(crate::crossed::elementary_equivalent(
                r,
                x,
                &second.rinehart,
                x2,
                &delta,
                &gamma,
            )?);
        }
    }
    Ok(out.seal())
}

fn parse_aux_matrix(
    obj: &serde_json::Map<String, serde_json::Value>,
    key: &str,
) -> Result<Matrix, Error> {
    let v = obj
        .get(key)
        .ok_or_else(|| Error::Bundle(format!("aux: missing `{key}`")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Bundle(format!("aux.{key}: expected a matrix")))?;
    let mut parsed = Vec::new();
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Bundle(format!("aux.{key}: ragged matrix")))?;
        let mut out_row = Vec::new();
        for x in row {
            let s = x
                .as_str()
                .ok_or_else(|| Error::Bundle(format!("aux.{key}: scalar strings expected")))?;
            out_row.push(crate::exact::parse_scalar(s)?);
        }
        parsed.push(crate::exact::Vector::new(out_row));
    }
    Ok(Matrix::from_rows(parsed))
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a).map(|r| (r, a.json)),
        Command::Cohomology(a) => cmd_cohomology(a).map(|r| (r, a.json)),
        Command::Extend(a) => cmd_extend(a).map(|r| (r, a.json)),
        Command::Crossed(a) => cmd_crossed(a).map(|r| (r, a.json)),
    };
    match result {
        Ok((report, as_json)) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", report.render_text());
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
