use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use freefactor::complex::{
    all_sticks, antipodal_faces_check, example_6_8, fake_family, figure1_left, figure1_right,
    is_standard_af, mask_of, nielsen_adjacent, of3_standardness, overlap_report, potential_stick,
    snops, standard_apartment, standard_basis_apartment, stick_characterization_check,
    superstick_antipodality, supersticks, verify_apartment, PotentialStick, Verdict,
};
use freefactor::graphs::{fold, LabeledGraph};
use freefactor::subgroups::{
    antipodal_af, antipodal_of, antipodal_of_by_folding, intersect, is_free_factor,
};
use freefactor::suite::{run_all, DEFAULT_SEED};
use freefactor::{Apartment, Error, Mode, Report, Subgroup, Word};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "freefactor",
    version,
    about = "Core graphs, free factors and apartments in free groups"
)]
struct Cli {
    /// Rank of the free group.
    #[arg(short = 'n', global = true, default_value_t = 3)]
    n: usize,
    /// `af` (subgroups) or `of` (conjugacy classes).
    #[arg(long, global = true, default_value = "af")]
    mode: Mode,
    /// Length bound for loop searches.
    #[arg(long, global = true, default_value_t = 40)]
    bound: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write a Graphviz rendering to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SubgroupArg {
    /// Comma-separated generators, e.g. "ab,bA".
    gens: Option<String>,
    /// Read a graph file instead of generators.
    #[arg(long, conflicts_with = "gens")]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct ApartmentArg {
    /// Standard apartment of this basis (default a_1, ..., a_n).
    #[arg(long)]
    basis: Option<String>,
    /// Apartment file.
    #[arg(long, conflicts_with = "basis")]
    file: Option<PathBuf>,
    /// fig1-left, fig1-right or ex68 (rank 3).
    #[arg(long, conflicts_with_all = ["basis", "file"])]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fold a wedge of generator loops (or a graph file).
    Fold(SubgroupArg),
    /// The pointed (af) or unpointed (of) core graph, with a basis.
    Core(SubgroupArg),
    /// Membership of a word in a subgroup.
    Member { gens: String, word: String },
    /// Intersection through the pullback.
    Intersect { first: String, second: String },
    /// Whitehead free-factor test, with a verified complement.
    Factor(SubgroupArg),
    /// Antipodality of a rank n-1 factor and a word.
    Antipodal {
        #[arg(long)]
        factor: String,
        #[arg(long)]
        word: String,
    },
    /// Verify an apartment and its opposite faces.
    Apartment(ApartmentArg),
    /// Sticks of a standard apartment.
    Sticks(ApartmentArg),
    /// Snops and the cube they span (af).
    Snops(ApartmentArg),
    /// Supersticks of a rank-3 face.
    Supersticks {
        #[command(flatten)]
        apartment: ApartmentArg,
        #[arg(long, default_value = "1,2,3")]
        face: String,
    },
    /// Compare an apartment with its Nielsen neighbour b_i -> b_i b_j.
    Overlap {
        #[command(flatten)]
        apartment: ApartmentArg,
        #[arg(short, default_value_t = 1)]
        i: usize,
        #[arg(short, default_value_t = 2)]
        j: usize,
    },
    /// The fake apartment family in rank n.
    Fake7,
    /// The fake OF apartment with [a, γbγ⁻¹], γ = baca⁻¹.
    Ex68,
    /// Run the verification suite.
    Suite,
    /// Graphviz rendering of a core graph.
    Dot(SubgroupArg),
}

struct Out {
    text: String,
    json: Value,
    ok: bool,
    dot: Option<String>,
}

impl Out {
    fn answer(text: String, json: Value) -> Out {
        Out {
            text,
            json,
            ok: true,
            dot: None,
        }
    }

    fn report(r: &Report, extra: &str, mut json: Value) -> Out {
        json["report"] = serde_json::to_value(r).expect("report serializes");
        let text = if extra.is_empty() {
            r.to_text()
        } else {
            format!("{extra}{}", r.to_text())
        };
        Out {
            text,
            json,
            ok: r.passed(),
            dot: None,
        }
    }

    fn with_dot(mut self, dot: String) -> Out {
        self.dot = Some(dot);
        self
    }
}

fn words(s: &str, n: usize) -> Result<Vec<Word>, Error> {
    Word::parse_list(s, n)
}

fn join(ws: &[Word]) -> String {
    ws.iter().map(Word::to_string).collect::<Vec<_>>().join(",")
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn input_graph(arg: &SubgroupArg, n: usize) -> Result<LabeledGraph, String> {
    match (&arg.gens, &arg.graph) {
        (Some(g), _) => {
            let ws = words(g, n).map_err(|e| e.to_string())?;
            Ok(LabeledGraph::bouquet(n, &ws))
        }
        (None, Some(p)) => {
            let g = LabeledGraph::parse(&read(p)?).map_err(|e| e.to_string())?;
            if g.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: g.rank(),
                }
                .to_string());
            }
            Ok(g)
        }
        (None, None) => Err("give generators or --graph <file>".into()),
    }
}

fn input_subgroup(arg: &SubgroupArg, n: usize, mode: Mode) -> Result<Subgroup, String> {
    let g = input_graph(arg, n)?;
    let g = if g.base().is_none() {
        g.with_base(Some(0)).map_err(|e| e.to_string())?
    } else {
        g
    };
    Subgroup::from_graph(&g, mode.pointed()).map_err(|e| e.to_string())
}

fn input_apartment(arg: &ApartmentArg, n: usize, mode: Mode) -> Result<Apartment, String> {
    let ap = if let Some(b) = &arg.basis {
        standard_apartment(n, &words(b, n).map_err(|e| e.to_string())?, mode)
    } else if let Some(p) = &arg.file {
        let ap = Apartment::parse(&read(p)?).map_err(|e| e.to_string())?;
        if ap.n() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: ap.n(),
            }
            .to_string());
        }
        return Ok(ap.in_mode(mode));
    } else if let Some(name) = &arg.example {
        if n != 3 {
            return Err(Error::RankMismatch {
                expected: 3,
                got: n,
            }
            .to_string());
        }
        match name.as_str() {
            "fig1-left" => figure1_left(mode),
            "fig1-right" => figure1_right(mode),
            "ex68" => example_6_8().map(|a| a.in_mode(mode)),
            other => {
                return Err(format!(
                    "unknown example '{other}' (fig1-left, fig1-right, ex68)"
                ))
            }
        }
    } else {
        standard_basis_apartment(n, mode)
    };
    ap.map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Out, String> {
    let (n, mode) = (cli.n, cli.mode);
    let e = |e: Error| e.to_string();
    match &cli.command {
        Command::Fold(arg) => {
            let f = fold(&input_graph(arg, n)?);
            let text = format!("# rank {}\n{}", f.cycle_rank(), f.to_text());
            Ok(
                Out::answer(text, json!({"rank": f.cycle_rank(), "graph": f}))
                    .with_dot(f.to_dot("fold")),
            )
        }
        Command::Core(arg) => {
            let h = input_subgroup(arg, n, mode)?;
            let g = h.graph();
            let basis = h.pointed_representative().basis();
            let text = format!(
                "# rank {}\n# basis {}\n{}",
                h.rank(),
                join(&basis),
                g.to_text()
            );
            let json = json!({"rank": h.rank(), "basis": basis.iter().map(Word::to_string).collect::<Vec<_>>(), "graph": g});
            Ok(Out::answer(text, json).with_dot(g.to_dot("core")))
        }
        Command::Member { gens, word } => {
            let h = Subgroup::generated(n, &words(gens, n).map_err(e)?, true).map_err(e)?;
            let w = Word::parse(word, n).map_err(e)?;
            let m = h.contains(&w).map_err(e)?;
            Ok(Out::answer(
                format!("member: {m}\n"),
                json!({"member": m, "word": w.to_string()}),
            ))
        }
        Command::Intersect { first, second } => {
            let h1 = Subgroup::generated(n, &words(first, n).map_err(e)?, true).map_err(e)?;
            let h2 = Subgroup::generated(n, &words(second, n).map_err(e)?, true).map_err(e)?;
            let k = intersect(&h1, &h2).map_err(e)?;
            let based = k.based.as_ref().map(|k| join(&k.basis()));
            let others: Vec<String> = k.others.iter().map(|o| o.to_string()).collect();
            let mut text = format!(
                "based: {}\n",
                based.clone().map_or("trivial".into(), |b| format!("<{b}>"))
            );
            for o in &others {
                text.push_str(&format!("other: {o}\n"));
            }
            let rank = k.based.as_ref().map_or(0, Subgroup::rank);
            Ok(Out::answer(
                text,
                json!({"based": based, "rank": rank, "others": others}),
            ))
        }
        Command::Factor(arg) => {
            let h = input_subgroup(arg, n, Mode::Af)?;
            let w = is_free_factor(&h).map_err(e)?;
            let text = match &w {
                Some(w) => format!("free factor: true\ncomplement: {}\n", join(&w.complement)),
                None => "free factor: false\n".into(),
            };
            let complement = w
                .as_ref()
                .map(|w| w.complement.iter().map(Word::to_string).collect::<Vec<_>>());
            Ok(Out::answer(
                text,
                json!({"free_factor": w.is_some(), "complement": complement}),
            ))
        }
        Command::Antipodal { factor, word } => {
            let a = Subgroup::generated(n, &words(factor, n).map_err(e)?, true).map_err(e)?;
            let u = Word::parse(word, n).map_err(e)?;
            let v = match mode {
                Mode::Af => antipodal_af(&a, &u),
                Mode::Of => antipodal_of(&a, &u),
            }
            .map_err(e)?;
            Ok(Out::answer(
                format!("antipodal: {v}\n"),
                json!({"antipodal": v, "mode": mode.to_string()}),
            ))
        }
        Command::Apartment(arg) => {
            let ap = input_apartment(arg, n, mode)?;
            let mut r = verify_apartment(&ap).map_err(e)?;
            r.absorb("opposite faces: ", antipodal_faces_check(&ap).map_err(e)?);
            let mut extra = String::new();
            let mut json = json!({"apartment": ap.view()});
            if mode == Mode::Af {
                let s = is_standard_af(&ap).map_err(e)?;
                extra.push_str(&format!("standard: {s}\n"));
                json["standard"] = json!(s);
            } else if n == 3 && r.passed() {
                let res = of3_standardness(&ap, cli.bound).map_err(e)?;
                extra.push_str(&format!("verdict: {}\n", verdict(res.verdict)));
                json["verdict"] = json!(res.verdict);
            }
            Ok(Out::report(&r, &format!("{}{extra}", ap.to_text()), json)
                .with_dot(ap.to_dot("apartment")))
        }
        Command::Sticks(arg) => {
            let ap = input_apartment(arg, n, mode)?;
            let sticks = all_sticks(&ap).map_err(e)?;
            let mut r = Report::new(format!("sticks mode={mode}"));
            let mut text = String::new();
            let mut list = Vec::new();
            for s in &sticks {
                let ok = stick_characterization_check(&s.vertex, &ap).map_err(e)?;
                r.check(
                    format!("{} at ({}, {})", s.vertex, s.face.0, s.face.1),
                    ok,
                    "below the face, antipodal to both walls",
                );
                text.push_str(&format!("({}, {}) {}\n", s.face.0, s.face.1, s.word));
                list.push(json!({"face": [s.face.0, s.face.1], "word": s.word.to_string(), "vertex": s.vertex.to_string()}));
            }
            text.push_str(&format!("{} sticks\n", sticks.len()));
            Ok(Out::report(&r, &text, json!({"sticks": list})))
        }
        Command::Snops(arg) => {
            let ap = input_apartment(arg, n, mode)?;
            let cube = snops(&ap).map_err(e)?;
            let mut text = String::new();
            for s in &cube.snops {
                text.push_str(
                    &s.sticks
                        .iter()
                        .map(|t| t.word.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                );
                text.push('\n');
            }
            text.push_str(&format!(
                "{} snops, {} cube edges, least difference {}\n",
                cube.snops.len(),
                cube.edges.len(),
                cube.min_difference().map_or("-".into(), |d| d.to_string())
            ));
            let json: Value = serde_json::from_str(&cube.to_json()).expect("cube serializes");
            Ok(Out::answer(text, json).with_dot(cube.to_dot("snops")))
        }
        Command::Supersticks { apartment, face } => {
            let ap = input_apartment(apartment, n, mode)?;
            let idx: Vec<usize> = face
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| format!("bad face '{face}'")))
                .collect::<Result<_, _>>()?;
            let [i, j, k] = idx[..] else {
                return Err(format!("face needs three indices, got '{face}'"));
            };
            let list = supersticks(&ap, (i, j, k)).map_err(e)?;
            let r = superstick_antipodality(&ap, (i, j, k)).map_err(e)?;
            let mut text: String = list.iter().map(|s| format!("{}\n", s.word)).collect();
            text.push_str(&format!("{} supersticks\n", list.len()));
            let words: Vec<String> = list.iter().map(|s| s.word.to_string()).collect();
            Ok(Out::report(&r, &text, json!({"supersticks": words})))
        }
        Command::Overlap { apartment, i, j } => {
            let d0 = input_apartment(apartment, n, mode)?;
            let d1 = nielsen_adjacent(&d0, *i, *j).map_err(e)?;
            let o = overlap_report(&d0, &d1).map_err(e)?;
            let mut text = String::new();
            for c in o.vertices.iter().chain(&o.sticks) {
                text.push_str(&format!("{:?} {} {:?}\n", c.face, c.vertex, c.class).to_lowercase());
            }
            Ok(Out::report(&o.report(), &text, json!({"overlap": o})))
        }
        Command::Fake7 => {
            let f = fake_family(n).map_err(e)?;
            let extra = format!("H = {}\n", f.h);
            Ok(Out::report(
                &f.report,
                &extra,
                json!({"h": f.h.to_string(), "apartment": f.apartment.view()}),
            )
            .with_dot(f.apartment.to_dot("fake")))
        }
        Command::Ex68 => {
            if n != 3 {
                return Err(Error::RankMismatch {
                    expected: 3,
                    got: n,
                }
                .to_string());
            }
            let ap = example_6_8().map_err(e)?;
            let face = ap.vertex(mask_of(&[1, 2])).map_err(e)?;
            let mut r = Report::new("example 6.8");
            let folded = antipodal_of_by_folding(face.subgroup(), &Word::gen(3)).map_err(e)?;
            r.check(format!("{face} antipodal to [c] by folding"), folded, "");
            let stick = potential_stick(&ap, mask_of(&[1, 2]), cli.bound).map_err(e)?;
            r.check(
                format!("no potential stick at {face}"),
                matches!(stick, PotentialStick::Absent),
                format!("{stick:?}"),
            );
            let res = of3_standardness(&ap, cli.bound).map_err(e)?;
            r.check(
                "verdict fake",
                res.verdict == Verdict::Fake,
                verdict(res.verdict),
            );
            let text = format!("{}{}", ap.to_text(), res.report.to_text());
            Ok(Out::report(
                &r,
                &text,
                json!({"apartment": ap.view(), "standardness": res}),
            )
            .with_dot(ap.to_dot("ex68")))
        }
        Command::Suite => {
            let r = run_all(cli.seed, cli.bound);
            Ok(Out::report(&r, "", json!({})))
        }
        Command::Dot(arg) => {
            let h = input_subgroup(arg, n, mode)?;
            let dot = h.graph().to_dot("core");
            Ok(Out::answer(dot.clone(), json!({"dot": dot})))
        }
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Standard => "standard",
        Verdict::Fake => "fake",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            if let Some(path) = &cli.dot {
                let Some(dot) = &out.dot else {
                    eprintln!("error: this command has no DOT output");
                    return ExitCode::from(2);
                };
                if let Err(err) = fs::write(path, dot) {
                    eprintln!("error: {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
