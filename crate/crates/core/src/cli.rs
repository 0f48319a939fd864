//! Batch command-line front end. Every verb reads JSON inputs and emits one
//! JSON document; library errors become `{"error": code, "message": ...}`
//! with exit status 1.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::duality::{self, DEFAULT_MAX_EDGES};
use crate::error::{Error, Result};
use crate::poly::{self, HasSkeleton};
use crate::proj::{self, ProjDiagram, RiiSite, DEFAULT_MAX_CROSSINGS};
use crate::ribbon::SignedRibbonGraph;
use crate::virtual_diagram::GaussDiagram;

/// Environment variable naming the corpus directory used to resolve input
/// paths that do not exist as given.
pub const CORPUS_ENV: &str = "RIBBONFORGE_CORPUS";

#[derive(Parser, Debug)]
#[command(name = "ribbonforge", version, about = "Signed ribbon graphs of link diagrams")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
struct Options {
    /// Largest crossing or chord count for state enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
    /// Largest edge count for subset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_EDGES)]
    max_edges: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Surface statistics of a ribbon graph.
    Stats { input: PathBuf },
    /// Canonical isomorphism code of a ribbon graph.
    Canon { input: PathBuf },
    /// Partial dual in the listed edges.
    PartialDual {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
    },
    /// Geometric dual.
    Dual { input: PathBuf },
    /// Partial duals up to isomorphism.
    EnumerateDuals { input: PathBuf },
    /// Join decompositions at each vertex.
    Joins { input: PathBuf },
    /// Whether two graphs are related by join-summand moves, with the moves.
    JoinRelated { first: PathBuf, second: PathBuf },

    /// Validity, link components and their homology classes.
    Classify { input: PathBuf },
    /// Faces and their checkerboard colourings.
    Colourings { input: PathBuf },
    /// Ribbon graph of one state.
    State {
        input: PathBuf,
        /// e.g. `c1=A,c2=B`
        #[arg(long)]
        assign: String,
    },
    /// Canonical codes of all state graphs.
    Gset { input: PathBuf },
    /// The two Tait graphs.
    Tait { input: PathBuf },
    /// Diagram realising a ribbon graph.
    FromRibbon {
        input: PathBuf,
        /// Emit a Gauss diagram, for any ribbon graph.
        #[arg(long = "virtual")]
        as_virtual: bool,
    },
    /// Whether two diagrams have the same state graphs.
    SameGset { first: PathBuf, second: PathBuf },
    /// Whether two colourable diagrams are related by summand flips.
    SummandFlipEquivalent { first: PathBuf, second: PathBuf },
    /// RII insertions until the all-A graph has one vertex.
    ReduceOneVertex { input: PathBuf },
    /// One RII insertion at a site.
    RiiInsert {
        input: PathBuf,
        /// JSON site, e.g. `{"first":{"side":{"face":0,"index":0}},"second":{"free_loop":0}}`
        #[arg(long)]
        site: String,
    },

    /// Ribbon graph of one state of a Gauss diagram.
    VState {
        input: PathBuf,
        #[arg(long)]
        assign: String,
    },
    /// Canonical codes of all state graphs of a Gauss diagram.
    VGset { input: PathBuf },
    /// Virtualise the listed chords.
    Virtualise {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        chord: Vec<String>,
    },
    /// Whether two Gauss diagrams have the same state graphs.
    VSameGset { first: PathBuf, second: PathBuf },
    /// A chord set whose virtualisation relates two Gauss diagrams.
    VirtualisationRelated { first: PathBuf, second: PathBuf },

    /// Kauffman bracket by state sum.
    Bracket { input: PathBuf },
    /// Kauffman bracket through the all-A graph's Bollobás–Riordan polynomial.
    BracketViaBr { input: PathBuf },
    /// Bollobás–Riordan polynomial of a ribbon graph, or of a diagram's all-A graph.
    BrPoly { input: PathBuf },
    /// Checks that both bracket computations agree.
    VerifyIdentity { input: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub document: Value,
    /// Set when the document was written to a file.
    pub written_to: Option<PathBuf>,
}

impl Outcome {
    /// The document as emitted: pretty JSON with sorted keys, or plain
    /// text for help output.
    pub fn render(&self) -> String {
        match &self.document {
            Value::String(s) => s.clone(),
            v => serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n",
        }
    }
}

fn error_doc(code: &str, message: impl Into<String>) -> Value {
    json!({"error": code, "message": message.into()})
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let (status, document) = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (0, Value::String(e.render().to_string()))
                }
                ErrorKind::InvalidSubcommand => (1, error_doc("UnknownVerb", e.render().to_string())),
                _ => (1, error_doc("ParseError", e.render().to_string())),
            };
            return Outcome {
                status,
                document,
                written_to: None,
            };
        }
    };
    let (status, document) = match dispatch(&cli.verb, &cli.opts) {
        Ok(r) => r,
        Err(e) => (1, error_doc(e.code(), e.to_string())),
    };
    let mut out = Outcome {
        status,
        document,
        written_to: None,
    };
    if let Some(path) = &cli.opts.output {
        if let Err(e) = std::fs::write(path, out.render()) {
            out.status = 1;
            out.document = error_doc("IoError", format!("{}: {e}", path.display()));
        } else {
            out.written_to = Some(path.clone());
        }
    }
    out
}

fn corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

/// Resolves an input path: as given, then under the corpus directory
/// (with any leading `corpus/` component dropped).
fn resolve(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    let rest = path.strip_prefix("corpus").unwrap_or(path);
    let candidate = corpus_dir().join(rest);
    if candidate.exists() {
        candidate
    } else {
        path.to_path_buf()
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let p = resolve(path);
    let text = std::fs::read_to_string(&p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

fn read_ribbon(path: &Path) -> Result<SignedRibbonGraph> {
    SignedRibbonGraph::from_json(&read_json(path)?)
}

fn read_diagram(path: &Path) -> Result<ProjDiagram> {
    ProjDiagram::from_json(&read_json(path)?)
}

fn read_gauss(path: &Path) -> Result<GaussDiagram> {
    GaussDiagram::from_json(&read_json(path)?)
}

/// A diagram input for the polynomial verbs: Gauss diagrams are told
/// apart by their `components` key.
enum AnyDiagram {
    Proj(ProjDiagram),
    Gauss(GaussDiagram),
}

fn read_any(path: &Path) -> Result<AnyDiagram> {
    let v = read_json(path)?;
    if v.get("components").is_some() {
        GaussDiagram::from_json(&v).map(AnyDiagram::Gauss)
    } else {
        ProjDiagram::from_json(&v).map(AnyDiagram::Proj)
    }
}

fn with_any<T>(d: &AnyDiagram, f: impl Fn(&dyn Bracketable) -> Result<T>) -> Result<T> {
    match d {
        AnyDiagram::Proj(p) => f(p),
        AnyDiagram::Gauss(g) => f(g),
    }
}

/// Object-safe view of the bracket engines.
trait Bracketable {
    fn bracket(&self, cap: usize) -> Result<poly::LaurentPoly>;
    fn bracket_br(&self, cap: usize) -> Result<poly::LaurentPoly>;
    fn all_a(&self) -> Result<SignedRibbonGraph>;
}

impl<D: HasSkeleton> Bracketable for D {
    fn bracket(&self, cap: usize) -> Result<poly::LaurentPoly> {
        poly::kauffman_bracket(self, cap)
    }
    fn bracket_br(&self, cap: usize) -> Result<poly::LaurentPoly> {
        poly::bracket_via_br(self, cap)
    }
    fn all_a(&self) -> Result<SignedRibbonGraph> {
        self.check()?;
        let k = self.skeleton();
        let labels: Vec<String> = (0..k.crossing_count()).map(|i| i.to_string()).collect();
        Ok(k.state_graph(&labels, &vec![crate::skeleton::Splice::A; k.crossing_count()]))
    }
}

fn graph_doc(g: &SignedRibbonGraph) -> Value {
    json!({"graph": g.to_json(), "stats": g.stats()})
}

fn codes_doc(codes: &std::collections::BTreeSet<crate::ribbon::CanonicalCode>) -> Value {
    json!({"count": codes.len(), "codes": codes.iter().map(|c| c.to_hex()).collect::<Vec<_>>()})
}

fn dispatch(verb: &Verb, o: &Options) -> Result<(i32, Value)> {
    let Format::Json = o.format;
    let ok = |v: Value| Ok((0, v));
    match verb {
        Verb::Stats { input } => ok(json!(read_ribbon(input)?.stats())),
        Verb::Canon { input } => ok(json!({"code": read_ribbon(input)?.canonical_code().to_hex()})),
        Verb::PartialDual { input, edges } => ok(read_ribbon(input).and_then(|g| duality::partial_dual(&g, edges))?.to_json()),
        Verb::Dual { input } => ok(duality::geometric_dual(&read_ribbon(input)?).to_json()),
        Verb::EnumerateDuals { input } => {
            let classes = duality::enumerate_partial_duals(&read_ribbon(input)?, o.max_edges)?;
            let list: Vec<Value> = classes
                .iter()
                .map(|(code, c)| json!({"code": code.to_hex(), "witness": c.witness, "stats": c.stats}))
                .collect();
            ok(json!({"count": list.len(), "classes": list}))
        }
        Verb::Joins { input } => {
            let g = read_ribbon(input)?;
            let joins: Vec<Value> = duality::find_joins(&g)?
                .iter()
                .map(|j| {
                    json!({
                        "vertex": j.vertex,
                        "start": j.start,
                        "len": j.len,
                        "p": g.mask_labels(j.p_mask),
                        "q": g.mask_labels(j.q_mask),
                    })
                })
                .collect();
            ok(json!({"joins": joins}))
        }
        Verb::JoinRelated { first, second } => {
            let moves = duality::join_move_related(&read_ribbon(first)?, &read_ribbon(second)?)?;
            ok(json!({"related": moves.is_some(), "moves": moves}))
        }

        Verb::Classify { input } => ok(json!(read_diagram(input)?.classify())),
        Verb::Colourings { input } => {
            let d = read_diagram(input)?;
            d.validate()?;
            let colourings = d.checkerboard_colourings()?;
            let faces: Vec<Value> = d.faces().iter().map(|f| json!(f.corners)).collect();
            ok(json!({"colourable": !colourings.is_empty(), "faces": faces, "colourings": colourings}))
        }
        Verb::State { input, assign } => {
            let d = read_diagram(input)?;
            let s = d.parse_state(assign)?;
            ok(graph_doc(&d.state_graph(&s)?))
        }
        Verb::Gset { input } => ok(codes_doc(&read_diagram(input)?.gset(o.max_crossings)?)),
        Verb::Tait { input } => {
            let d = read_diagram(input)?;
            d.validate()?;
            let [black, white] = d.tait_graphs()?;
            ok(json!({"tait": [graph_doc(&black), graph_doc(&white)]}))
        }
        Verb::FromRibbon { input, as_virtual } => {
            let g = read_ribbon(input)?;
            ok(if *as_virtual {
                GaussDiagram::from_ribbon(&g).to_json()
            } else {
                ProjDiagram::from_ribbon(&g)?.to_json()
            })
        }
        Verb::SameGset { first, second } => {
            ok(json!({"same_gset": read_diagram(first)?.same_gset(&read_diagram(second)?, o.max_crossings)?}))
        }
        Verb::SummandFlipEquivalent { first, second } => {
            let (a, b) = (read_diagram(first)?, read_diagram(second)?);
            a.validate()?;
            b.validate()?;
            ok(json!({"summand_flip_equivalent": a.summand_flip_equivalent(&b)?}))
        }
        Verb::ReduceOneVertex { input } => {
            let d = read_diagram(input)?;
            let steps = proj::reduce_one_vertex_steps(&d)?;
            let vertices = steps
                .iter()
                .map(|s| s.all_a_graph().map(|g| g.vertex_count()))
                .collect::<Result<Vec<_>>>()?;
            let last = steps.last().unwrap_or(&d);
            ok(json!({"diagram": last.to_json(), "all_a_vertices": vertices, "all_a": last.all_a_graph()?.to_json()}))
        }
        Verb::RiiInsert { input, site } => {
            let site: RiiSite = serde_json::from_str(site).map_err(|e| Error::Parse(format!("site: {e}")))?;
            ok(proj::rii_insert(&read_diagram(input)?, &site)?.to_json())
        }

        Verb::VState { input, assign } => {
            let v = read_gauss(input)?;
            let s = v.parse_state(assign)?;
            ok(graph_doc(&v.state_graph(&s)?))
        }
        Verb::VGset { input } => ok(codes_doc(&read_gauss(input)?.gset(o.max_crossings)?)),
        Verb::Virtualise { input, chord } => {
            let v = read_gauss(input)?;
            ok(chord.iter().try_fold(v, |acc, c| acc.virtualise(c))?.to_json())
        }
        Verb::VSameGset { first, second } => {
            ok(json!({"same_gset": read_gauss(first)?.same_gset(&read_gauss(second)?, o.max_crossings)?}))
        }
        Verb::VirtualisationRelated { first, second } => {
            let cert = read_gauss(first)?.virtualisation_related(&read_gauss(second)?, o.max_crossings)?;
            ok(json!({"related": cert.is_some(), "chords": cert}))
        }

        Verb::Bracket { input } => ok(with_any(&read_any(input)?, |d| d.bracket(o.max_crossings))?.to_json()),
        Verb::BracketViaBr { input } => ok(with_any(&read_any(input)?, |d| d.bracket_br(o.max_crossings))?.to_json()),
        Verb::BrPoly { input } => {
            let v = read_json(input)?;
            let g = if v.get("curves").is_some() {
                SignedRibbonGraph::from_json(&v)?
            } else {
                with_any(&read_any(input)?, |d| d.all_a())?
            };
            ok(poly::br_polynomial(&g, o.max_edges)?.to_json())
        }
        Verb::VerifyIdentity { input } => {
            let d = read_any(input)?;
            let direct = with_any(&d, |d| d.bracket(o.max_crossings))?;
            let via = with_any(&d, |d| d.bracket_br(o.max_crossings))?;
            let pass = direct == via;
            Ok((
                i32::from(!pass),
                json!({
                    "result": if pass { "PASS" } else { "FAIL" },
                    "bracket": direct.to_json(),
                    "bracket_via_br": via.to_json(),
                }),
            ))
        }
    }
}
