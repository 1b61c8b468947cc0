use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use drsl::klm::{rc_model, BaseRankResult, DefeasibleImplication, RationalClosure};
use drsl::normalize::{normalize_kb, NormalKB};
use drsl::oracle::{
    bounded_ranked_entailment, closed_form_count, count_ranked_interpretations,
    generate_random_kb, minimal_model_oracle, BoundedOutcome, EnumerationBudget, GeneratorProfile,
};
use drsl::semantics::{build_rc_structure, RankedStandpointStructure};
use drsl::standpoint::{Answer, AnswerMode, Reasoner, TraceEntry};
use drsl::syntax::{
    parse_kb, parse_statement_extending, print_bool, print_klm, print_kb, DrslStatement,
    KnowledgeBase, Modality, StandpointId,
};
use drsl::exec::Execution;

/// Version of every `--json` document.
const JSON_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "drsl", version, about = "Defeasible standpoint reasoning under rational closure")]
struct Cli {
    /// Emit a versioned JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report the per-knowledge-base verdicts behind an answer.
    #[arg(long, global = true)]
    trace: bool,
    /// Largest vocabulary to enumerate valuations over (models and oracles).
    #[arg(long, global = true, value_name = "N")]
    max_atoms: Option<usize>,
    /// Run per-part work sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a knowledge base and print it canonically.
    Parse { kb: PathBuf },
    /// Print the normal form of a knowledge base.
    Normalize { kb: PathBuf },
    /// Split a knowledge base into propositional parts and list `Know_s`.
    Split { kb: PathBuf },
    /// Print the BaseRank partition of one split part.
    Baserank {
        kb: PathBuf,
        /// Part label such as `K_C` or `K_L^1`, or a bare standpoint name.
        label: Option<String>,
    },
    /// Decide rational closure entailment of a query.
    Entail {
        kb: PathBuf,
        query: Option<String>,
        /// Read one statement per line; all must hold.
        #[arg(long, conflicts_with = "query")]
        query_file: Option<PathBuf>,
    },
    /// Build and print the representative ranked standpoint structure.
    Model {
        kb: PathBuf,
        /// Also verify that the structure is a model of the knowledge base.
        #[arg(long)]
        check: bool,
    },
    /// Check a structure given as JSON against a knowledge base.
    Check { kb: PathBuf, structure: PathBuf },
    /// Brute-force verification helpers for tiny vocabularies.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Pointwise-minimum ranked model of a propositional knowledge base, compared with rational closure.
    MinModel { kb: PathBuf },
    /// Count ranked interpretations by enumeration and by closed form.
    CountRi {
        #[arg(long)]
        atoms: usize,
    },
    /// Search for a ranked standpoint structure that models the knowledge base but not the query.
    BoundedEntail {
        kb: PathBuf,
        query: String,
        #[arg(long, default_value_t = 3)]
        max_precisifications: usize,
        #[arg(long, default_value_t = 200_000)]
        max_structures: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the random knowledge base for a seed.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 2)]
        standpoints: usize,
        #[arg(long, default_value_t = 6)]
        max_statements: usize,
    },
}

struct Ctx {
    json: bool,
    trace: bool,
    max_atoms: Option<usize>,
    exec: Execution,
}

impl Ctx {
    fn emit(&self, text: impl AsRef<str>, doc: Value) {
        if self.json {
            let mut doc = doc;
            if let Value::Object(m) = &mut doc {
                m.insert("version".into(), json!(JSON_VERSION));
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            let text = text.as_ref();
            if !text.is_empty() {
                println!("{}", text.trim_end_matches('\n'));
            }
        }
    }

    fn notes(&self, diagnostics: &[String]) {
        if !self.json {
            for d in diagnostics {
                eprintln!("note: {d}");
            }
        }
    }

    fn budget(&self) -> EnumerationBudget {
        EnumerationBudget {
            max_atoms: self.max_atoms.unwrap_or(EnumerationBudget::default().max_atoms),
            ..Default::default()
        }
    }

    fn check_width(&self, kb: &KnowledgeBase) -> Result<()> {
        let cap = self.max_atoms.unwrap_or(drsl::classical::DEFAULT_ENUMERATION_CAP);
        let width = kb.vocabulary.atom_count();
        if width > cap {
            bail!("the knowledge base has {width} atoms, more than --max-atoms {cap}");
        }
        Ok(())
    }
}

fn load_kb(path: &Path) -> Result<KnowledgeBase> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_kb(&text).map_err(|e| anyhow!("{}:{e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        json: cli.json,
        trace: cli.trace,
        max_atoms: cli.max_atoms,
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match run(&ctx, cli.command) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if ctx.json {
                println!(
                    "{}",
                    json!({ "version": JSON_VERSION, "error": format!("{e:#}") })
                );
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<bool> {
    match command {
        Command::Parse { kb } => cmd_parse(ctx, &load_kb(&kb)?),
        Command::Normalize { kb } => cmd_normalize(ctx, &load_kb(&kb)?),
        Command::Split { kb } => cmd_split(ctx, &load_kb(&kb)?),
        Command::Baserank { kb, label } => cmd_baserank(ctx, &load_kb(&kb)?, label.as_deref()),
        Command::Entail {
            kb,
            query,
            query_file,
        } => {
            let queries = match (query, query_file) {
                (Some(q), None) => vec![q],
                (None, Some(path)) => fs::read_to_string(&path)
                    .with_context(|| format!("cannot read {}", path.display()))?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(str::to_string)
                    .collect(),
                _ => bail!("give a query or --query-file"),
            };
            if queries.is_empty() {
                bail!("the query file has no statements");
            }
            cmd_entail(ctx, &load_kb(&kb)?, &queries)
        }
        Command::Model { kb, check } => cmd_model(ctx, &load_kb(&kb)?, check),
        Command::Check { kb, structure } => cmd_check(ctx, &load_kb(&kb)?, &structure),
        Command::Oracle { command } => match command {
            OracleCommand::MinModel { kb } => cmd_min_model(ctx, &load_kb(&kb)?),
            OracleCommand::CountRi { atoms } => cmd_count_ri(ctx, atoms),
            OracleCommand::BoundedEntail {
                kb,
                query,
                max_precisifications,
                max_structures,
                seed,
            } => {
                let budget = EnumerationBudget {
                    max_precisifications,
                    max_structures,
                    seed,
                    ..ctx.budget()
                };
                cmd_bounded(ctx, load_kb(&kb)?, &query, &budget)
            }
            OracleCommand::Generate {
                seed,
                atoms,
                standpoints,
                max_statements,
            } => {
                let profile = GeneratorProfile {
                    atoms,
                    standpoints,
                    max_statements,
                    ..Default::default()
                };
                cmd_parse(ctx, &generate_random_kb(seed, &profile))
            }
        },
    }
}

fn cmd_parse(ctx: &Ctx, kb: &KnowledgeBase) -> Result<bool> {
    let v = &kb.vocabulary;
    let statements: Vec<String> = kb
        .statements
        .iter()
        .map(|s| drsl::syntax::print_statement(s, v))
        .collect();
    ctx.emit(
        print_kb(kb),
        json!({
            "atoms": v.atom_names(),
            "standpoints": v.standpoints().filter(|s| !s.is_universal()).map(|s| s.name).collect::<Vec<_>>(),
            "statements": statements,
        }),
    );
    Ok(true)
}

fn cmd_normalize(ctx: &Ctx, kb: &KnowledgeBase) -> Result<bool> {
    let n = normalize_kb(kb);
    let v = &n.vocabulary;
    let sharpenings: Vec<String> = n
        .sharpenings
        .iter()
        .map(|&(a, b)| format!("{} <= {}", v.standpoint_name(a), v.standpoint_name(b)))
        .collect();
    let statements: Vec<String> = n
        .statements
        .iter()
        .map(|s| drsl::syntax::print_statement(&s.to_drsl(), v))
        .collect();
    ctx.emit(
        n.to_document(),
        json!({ "sharpenings": sharpenings, "statements": statements }),
    );
    Ok(true)
}

fn cmd_split(ctx: &Ctx, kb: &KnowledgeBase) -> Result<bool> {
    let n = normalize_kb(kb);
    let r = Reasoner::with_options(n, ctx.exec, Default::default());
    let split = r.split();
    let v = &r.kb().vocabulary;
    let mut text = String::new();
    let mut parts = Vec::new();
    for k in &split.kbs {
        let stmts: Vec<String> = k.statements.iter().map(|s| print_klm(s, v)).collect();
        text.push_str(&format!("{}:\n", k.label));
        for s in &stmts {
            text.push_str(&format!("  {s}\n"));
        }
        parts.push(json!({
            "label": k.label,
            "standpoint": v.standpoint_name(k.standpoint),
            "statements": stmts,
        }));
    }
    let mut know = Map::new();
    for (s, _) in &split.know {
        let labels = split.know_labels(*s).expect("listed");
        text.push_str(&format!("Know_{} = {{{}}}\n", v.standpoint_name(*s), labels.join(", ")));
        know.insert(v.standpoint_name(*s).to_string(), json!(labels));
    }
    ctx.emit(text, json!({ "parts": parts, "know": know }));
    Ok(true)
}

fn di_json(d: &DefeasibleImplication, kb: &NormalKB) -> Value {
    json!({
        "implication": print_klm(&d.to_statement(), &kb.vocabulary),
        "materialization": print_bool(&d.materialization(), &kb.vocabulary),
    })
}

fn cmd_baserank(ctx: &Ctx, kb: &KnowledgeBase, label: Option<&str>) -> Result<bool> {
    let n = normalize_kb(kb);
    let split = drsl::standpoint::standpoint_split(&n);
    let labels: Vec<&str> = split.kbs.iter().map(|k| k.label.as_str()).collect();
    let part = match label {
        Some(l) => split
            .kb(l)
            .or_else(|| split.kb(&format!("K_{l}")))
            .ok_or_else(|| anyhow!("no split part `{l}`; the parts are {}", labels.join(", ")))?,
        None if split.kbs.len() == 1 => &split.kbs[0],
        None => bail!("name a split part; the parts are {}", labels.join(", ")),
    };
    let result: BaseRankResult = RationalClosure::new(&part.statements).base_rank().clone();
    let line = |ds: &[DefeasibleImplication]| {
        ds.iter()
            .map(|d| print_bool(&d.materialization(), &n.vocabulary))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let mut text = format!("{}\n", part.label);
    for (i, r) in result.ranks.iter().enumerate() {
        text.push_str(&format!("R_{i}: {}\n", line(r)).replace(": \n", ":\n"));
    }
    text.push_str(&format!("R_∞: {}\n", line(&result.infinite_rank)).replace(": \n", ":\n"));
    text.push_str(&format!("n = {}\n", result.n));
    ctx.emit(
        text,
        json!({
            "label": part.label,
            "ranks": result.ranks.iter().map(|r| r.iter().map(|d| di_json(d, &n)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "infinite": result.infinite_rank.iter().map(|d| di_json(d, &n)).collect::<Vec<_>>(),
            "n": result.n,
        }),
    );
    Ok(true)
}

/// A knowledge base without any standpoint-specific part has no precisifications;
/// such queries are answered by propositional rational closure over `K_*`.
fn universal_only(r: &Reasoner) -> Option<usize> {
    let split = r.split();
    match split.kbs.as_slice() {
        [k] if k.standpoint.is_universal() && k.extension.is_none() => Some(0),
        _ => None,
    }
}

fn answer(r: &Reasoner, stmt: &DrslStatement) -> Result<Answer> {
    if let (Some(part), false) = (universal_only(r), stmt.is_sharpening()) {
        let q = drsl::normalize::normalize_statement(stmt).expect("not a sharpening");
        let mut trace = Vec::new();
        let mut verdict = true;
        for (i, c) in q.iter().enumerate() {
            let v = r.rc_prop_at(part, &c.body);
            trace.push(TraceEntry {
                conjunct: i,
                label: r.split().kbs[part].label.clone(),
                verdict: v,
            });
            if !v {
                verdict = false;
                break;
            }
        }
        return Ok(Answer {
            verdict,
            mode: AnswerMode::RcEntailment,
            trace,
            diagnostics: vec![
                "every statement is [*]-bound, so the query is answered by propositional rational closure over K_*"
                    .to_string(),
            ],
        });
    }
    Ok(r.ask(stmt)?)
}

fn cmd_entail(ctx: &Ctx, kb: &KnowledgeBase, queries: &[String]) -> Result<bool> {
    let r = Reasoner::with_options(normalize_kb(kb), ctx.exec, Default::default());
    let mut verdict = true;
    let mut trace = Vec::new();
    let mut diagnostics = Vec::new();
    let mut modes = Vec::new();
    let mut offset = 0;
    for q in queries {
        let stmt = r.parse_query(q).map_err(|e| anyhow!("query `{q}`: {e}"))?;
        let a = answer(&r, &stmt)?;
        let conjuncts = a.trace.iter().map(|t| t.conjunct + 1).max().unwrap_or(0);
        trace.extend(a.trace.into_iter().map(|t| TraceEntry {
            conjunct: t.conjunct + offset,
            ..t
        }));
        offset += conjuncts.max(1);
        diagnostics.extend(a.diagnostics);
        modes.push(a.mode);
        if !a.verdict {
            verdict = false;
            break;
        }
    }
    let mode = if modes.iter().all(|m| *m == AnswerMode::ClassicalSharpening) {
        AnswerMode::ClassicalSharpening
    } else {
        AnswerMode::RcEntailment
    };
    let mut text = format!("{verdict}\n");
    if ctx.trace {
        for t in &trace {
            text.push_str(&format!("  [{}] {}: {}\n", t.conjunct, t.label, t.verdict));
        }
    }
    let mut doc = json!({
        "verdict": verdict,
        "mode": mode,
        "diagnostics": diagnostics,
    });
    if ctx.trace {
        doc["trace"] = serde_json::to_value(&trace)?;
    }
    ctx.notes(&diagnostics);
    ctx.emit(text, doc);
    Ok(verdict)
}

fn tables(m: &RankedStandpointStructure, kb: &KnowledgeBase) -> (String, Map<String, Value>) {
    let mut text = String::new();
    let mut map = Map::new();
    for (p, g) in m.pi.iter().zip(&m.gamma) {
        let t = g.to_table(&kb.vocabulary);
        text.push_str(&format!("{p}:\n{t}\n\n"));
        map.insert(p.clone(), json!(t));
    }
    (text, map)
}

fn sigma_text(m: &RankedStandpointStructure, kb: &KnowledgeBase) -> String {
    let mut ids: Vec<&StandpointId> = m.sigma.keys().collect();
    ids.sort_by_key(|s| kb.vocabulary.standpoint_name(**s));
    ids.iter()
        .map(|s| {
            let labels: Vec<&str> = m.sigma[*s].iter().map(|&p| m.pi[p].as_str()).collect();
            format!("sigma({}) = {{{}}}\n", kb.vocabulary.standpoint_name(**s), labels.join(", "))
        })
        .collect()
}

fn cmd_model(ctx: &Ctx, kb: &KnowledgeBase, check: bool) -> Result<bool> {
    ctx.check_width(kb)?;
    let rc = build_rc_structure(&normalize_kb(kb))?;
    let m = &rc.structure;
    let (mut text, tabs) = tables(m, kb);
    text.push_str(&sigma_text(m, kb));
    let mut doc = json!({
        "structure": m.to_json(&kb.vocabulary),
        "tables": tabs,
        "valid": m.is_valid(),
        "diagnostics": rc.diagnostics,
    });
    let mut ok = true;
    if check {
        ok = m.check_model(kb)?;
        text.push_str(&format!("model: {ok}\n"));
        doc["model"] = json!(ok);
    }
    ctx.notes(&rc.diagnostics);
    ctx.emit(text, doc);
    Ok(ok)
}

fn cmd_check(ctx: &Ctx, kb: &KnowledgeBase, path: &Path) -> Result<bool> {
    ctx.check_width(kb)?;
    let raw = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&raw).with_context(|| format!("{} is not JSON", path.display()))?;
    let value = value.get("structure").cloned().unwrap_or(value);
    let m = RankedStandpointStructure::from_json(&value, &kb.vocabulary)?;
    let invalid = m.invalid_precisifications();
    let ok = m.check_model(kb)?;
    let mut text = format!("valid: {}\n", invalid.is_empty());
    for p in &invalid {
        text.push_str(&format!("  {p} has no finite-rank valuation\n"));
    }
    text.push_str(&format!("model: {ok}\n"));
    ctx.emit(
        text,
        json!({ "valid": invalid.is_empty(), "invalid": invalid, "model": ok }),
    );
    Ok(ok)
}

fn cmd_min_model(ctx: &Ctx, kb: &KnowledgeBase) -> Result<bool> {
    let n = normalize_kb(kb);
    if !n.sharpenings.is_empty()
        || n
            .statements
            .iter()
            .any(|s| !(s.modality == Modality::Box && s.standpoint.is_universal()))
    {
        bail!("the minimal-model oracle takes propositional knowledge bases only");
    }
    let stmts: Vec<_> = n.statements.iter().map(|s| s.body.clone()).collect();
    let min = minimal_model_oracle(&stmts, &kb.vocabulary, &ctx.budget())?;
    let rc = rc_model(&stmts, &kb.vocabulary)?;
    let agrees = min == rc;
    let table = min.to_table(&kb.vocabulary);
    ctx.emit(
        format!("{table}\nagrees with rational closure: {agrees}\n"),
        json!({ "model": min.to_json(&kb.vocabulary), "table": table, "agrees": agrees }),
    );
    Ok(agrees)
}

fn cmd_count_ri(ctx: &Ctx, atoms: usize) -> Result<bool> {
    let enumerated = count_ranked_interpretations(atoms, &ctx.budget(), ctx.exec)?;
    let closed = closed_form_count(atoms);
    let agrees = enumerated as u128 == closed;
    ctx.emit(
        format!("enumerated: {enumerated}\nclosed form: {closed}\n"),
        json!({ "atoms": atoms, "enumerated": enumerated, "closed_form": closed.to_string(), "agrees": agrees }),
    );
    Ok(agrees)
}

fn cmd_bounded(ctx: &Ctx, mut kb: KnowledgeBase, query: &str, budget: &EnumerationBudget) -> Result<bool> {
    let psi = parse_statement_extending(query, &mut kb.vocabulary).map_err(|e| anyhow!("query `{query}`: {e}"))?;
    match bounded_ranked_entailment(&kb, &psi, budget)? {
        BoundedOutcome::NoCounterexample { checked, exhausted } => {
            let how = if exhausted { "every structure within the budget" } else { "a seeded sample" };
            ctx.emit(
                format!("no counterexample among {checked} structures ({how})\n"),
                json!({ "refuted": false, "checked": checked, "exhausted": exhausted }),
            );
            Ok(true)
        }
        BoundedOutcome::Refuted(m) => {
            let (tabs_text, tabs) = tables(&m, &kb);
            ctx.emit(
                format!("counterexample:\n{}{tabs_text}", sigma_text(&m, &kb)),
                json!({ "refuted": true, "structure": m.to_json(&kb.vocabulary), "tables": tabs }),
            );
            Ok(false)
        }
    }
}
