use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use basketweave::analysis::{decompose_region, CrystalDecomposition};
use basketweave::automaton::{run, run_with, AutomatonState, Rule};
use basketweave::coloring::{
    canonical_seed, classify, exact_candidates, propagate_rounds, search_perfect_seeds,
    ColorPermutation, PartialColoring, SearchBudget, SearchError, Seed, WindowGraph,
    PROPAGATION_MARGIN,
};
use basketweave::geometry;
use basketweave::lattice::{coordination_sequence, AdjacencyKind, TileId, Window};

use crate::render::{self, RenderSpec, View};
use crate::seedfile;

#[derive(Parser, Debug)]
#[command(name = "basketweave", version, about = "Colourings and growth on the basketweave domino tiling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Full,
    Edge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ViewArg {
    Field,
    Candidates,
    Components,
    Patterns,
    Automaton,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a seed over a schedule of window radii.
    Classify {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "4,8,12,16,20")]
        schedule: Vec<u32>,
        /// SVG of the forced colours.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the tiles forced by a seed inside a window.
    Grow {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the growth automaton and write `s,V,Y,C` rows.
    Automaton {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        ticks: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for one SVG frame per tick.
        #[arg(long)]
        frames: Option<PathBuf>,
    },
    /// Coordination sequence of the tiling up to distance `--radius`.
    Coordseq {
        #[arg(long, value_enum, default_value = "full")]
        kind: KindArg,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crystal decomposition of the forced field.
    Crystals {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, default_value_t = 20)]
        radius: u32,
        /// SVG of the components.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for perfect seeds of `--k` tiles in a patch.
    Search {
        #[arg(long)]
        k: usize,
        /// Patch radius in blocks.
        #[arg(long, default_value_t = 1)]
        patch: u32,
        /// Radius of the window forcing has to colour.
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// Maximum number of symmetry classes.
        #[arg(long, default_value_t = SearchBudget::default().max_classes)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a window as SVG.
    Render {
        #[arg(long, value_enum)]
        view: ViewArg,
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 20)]
        ticks: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the molecule geometry.
    Geometry,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) | CliError::Invariant(m) => m,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn load_seed(path: &Path) -> Result<Seed> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    seedfile::parse_seed(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `contents` to `out`, or returns it for stdout.
fn emit(out: &Option<PathBuf>, contents: String) -> Result<String> {
    match out {
        Some(p) => write_file(p, &contents).map(|_| String::new()),
        None => Ok(contents),
    }
}

/// Runs a command and returns what goes to stdout.
pub fn execute(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Classify {
            seed,
            schedule,
            out,
        } => cmd_classify(&load_seed(seed)?, schedule, out),
        Command::Grow { seed, radius, out } => cmd_grow(&load_seed(seed)?, *radius, out),
        Command::Automaton {
            seed,
            ticks,
            out,
            frames,
        } => cmd_automaton(&load_seed(seed)?, *ticks, out, frames),
        Command::Coordseq { kind, radius, out } => emit(out, cmd_coordseq(*kind, *radius)),
        Command::Crystals { seed, radius, out } => cmd_crystals(&load_seed(seed)?, *radius, out),
        Command::Search {
            k,
            patch,
            radius,
            budget,
            out,
        } => emit(out, cmd_search(*k, *patch, *radius, *budget)?),
        Command::Render {
            view,
            seed,
            radius,
            ticks,
            out,
        } => {
            let svg = cmd_render(*view, &load_seed(seed)?, *radius, *ticks)?;
            write_file(out, &svg).map(|_| String::new())
        }
        Command::Geometry => cmd_geometry(),
    }
}

fn forced_field(s: &Seed, w: Window) -> PartialColoring {
    let outer = Window::new(w.center, w.radius + PROPAGATION_MARGIN);
    propagate_rounds(s, &WindowGraph::new(outer)).coloring.restrict(w)
}

pub fn cmd_classify(s: &Seed, schedule: &[u32], out: &Option<PathBuf>) -> Result<String> {
    let rep = classify(s, schedule).map_err(|e| CliError::Input(e.to_string()))?;
    let w = rep.forced.window();
    if let Some(p) = out {
        write_file(p, &render::render_field(RenderSpec::new(View::Field, w), &rep.forced))?;
    }
    let sched: Vec<String> = rep.schedule.iter().map(|r| r.to_string()).collect();
    Ok(format!(
        "verdict: {}\nschedule: {}\nforced: {} of {} tiles\n",
        rep.verdict,
        sched.join(","),
        rep.forced.colored_count(),
        w.len()
    ))
}

pub fn cmd_grow(s: &Seed, radius: u32, out: &Option<PathBuf>) -> Result<String> {
    let w = s.window(radius);
    let outer = Window::new(w.center, w.radius + PROPAGATION_MARGIN);
    let p = propagate_rounds(s, &WindowGraph::new(outer));
    let c = p.coloring.restrict(w);
    let mut text = format!(
        "# forced {} of {} tiles in {} rounds, contradiction {}\n",
        c.colored_count(),
        w.len(),
        p.round_count,
        p.coloring.has_contradiction()
    );
    text.push_str(&seedfile::format_seed(&c.to_seed()));
    emit(out, text)
}

pub fn cmd_automaton(
    s: &Seed,
    ticks: u32,
    out: &Option<PathBuf>,
    frames: &Option<PathBuf>,
) -> Result<String> {
    if ticks == 0 {
        return Err(CliError::Input("--ticks must be at least 1".into()));
    }
    let tiles: Vec<TileId> = s.tiles().collect();
    let seq = match frames {
        None => run(&tiles, ticks).map(|(seq, _)| seq),
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
            let st = AutomatonState::for_run(&tiles, ticks, Rule::default());
            let spec = RenderSpec::new(View::AutomatonFrame, st.region());
            let mut failed = None;
            let res = run_with(st, ticks, |rep, st| {
                let path = dir.join(format!("frame_{:04}.svg", rep.time));
                if let Err(e) = write_file(&path, &render::render_frame(spec, st, rep)) {
                    failed.get_or_insert(e);
                }
            });
            if let Some(e) = failed {
                return Err(e);
            }
            res.map(|(seq, _)| seq)
        }
    }
    .map_err(|e| CliError::Invariant(e.to_string()))?;
    if (0..seq.len()).any(|k| seq.c[k] != seq.y[k] + seq.v[k]) {
        return Err(CliError::Invariant("C differs from Y + V".into()));
    }
    emit(out, seq.to_csv())
}

pub fn cmd_coordseq(kind: KindArg, s_max: usize) -> String {
    let kind = match kind {
        KindArg::Full => AdjacencyKind::Full,
        KindArg::Edge => AdjacencyKind::EdgeOnly,
    };
    let mut out = String::from("s,count\n");
    for (s, n) in coordination_sequence(TileId::new(0, 0, 0), kind, s_max)
        .iter()
        .enumerate()
    {
        writeln!(out, "{s},{n}").unwrap();
    }
    out
}

fn crystals_of(s: &Seed, radius: u32) -> (PartialColoring, CrystalDecomposition) {
    let c = forced_field(s, s.window(radius));
    let d = decompose_region(&c);
    (c, d)
}

pub fn cmd_crystals(s: &Seed, radius: u32, out: &Option<PathBuf>) -> Result<String> {
    let (c, d) = crystals_of(s, radius);
    if let Some(p) = out {
        let spec = RenderSpec::new(View::Components, c.window());
        write_file(p, &render::render_components(spec, &d))?;
    }
    let mut text = String::new();
    if !c.is_complete() {
        writeln!(
            text,
            "# partial field: {} of {} tiles forced",
            c.colored_count(),
            c.window().len()
        )
        .unwrap();
    }
    writeln!(
        text,
        "# {} patterns, {} components, {} crystals",
        d.recoloring.patterns.len(),
        d.components.len(),
        d.crystal_count()
    )
    .unwrap();
    text.push_str(&d.report());
    Ok(text)
}

fn compact(s: &Seed) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|(t, c)| format!("{},{},{},{}", t.i, t.j, t.slot, c))
        .collect();
    parts.join(" ")
}

pub fn cmd_search(k: usize, patch: u32, radius: u32, budget: u64) -> Result<String> {
    let patch_w = Window::centered(patch);
    let res = search_perfect_seeds(k, patch_w, radius, SearchBudget { max_classes: budget });
    let outcome = match res {
        Ok(o) => o,
        Err(e @ SearchError::BudgetExhausted { .. }) => return Err(CliError::Budget(e.to_string())),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let mut text = format!(
        "# k = {k}, patch radius {patch}, test radius {radius}\n# {} symmetry classes tested, {} perfect\n",
        outcome.classes,
        outcome.seeds.len()
    );
    if outcome.seeds.is_empty() {
        text.push_str("# exhausted patch: no seed colours the test window by forcing\n");
    }
    for (n, s) in outcome.seeds.iter().enumerate() {
        writeln!(text, "\n# class {}: {}", n + 1, compact(&canonical_seed(s))).unwrap();
        text.push_str(&seedfile::format_seed(s));
    }
    Ok(text)
}

pub fn cmd_render(view: ViewArg, s: &Seed, radius: u32, ticks: u32) -> Result<String> {
    let w = s.window(radius);
    Ok(match view {
        ViewArg::Field => render::render_field(RenderSpec::new(View::Field, w), &forced_field(s, w)),
        ViewArg::Candidates => {
            let m = exact_candidates(s, w).map_err(|e| CliError::Input(e.to_string()))?;
            render::render_candidates(RenderSpec::new(View::Candidates, w), &m)
        }
        ViewArg::Components => {
            let (_, d) = crystals_of(s, radius);
            render::render_components(RenderSpec::new(View::Components, w), &d)
        }
        ViewArg::Patterns => {
            let (_, d) = crystals_of(s, radius);
            render::render_patterns(RenderSpec::new(View::Patterns, w), &d, s)
        }
        ViewArg::Automaton => {
            if ticks == 0 {
                return Err(CliError::Input("--ticks must be at least 1".into()));
            }
            let tiles: Vec<TileId> = s.tiles().collect();
            let mut last = None;
            let st = AutomatonState::for_run(&tiles, ticks, Rule::default());
            let (_, st) = run_with(st, ticks, |rep, _| last = Some(rep.clone()))
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            let rep = last.expect("at least one tick");
            render::render_frame(RenderSpec::new(View::AutomatonFrame, w), &st, &rep)
        }
    })
}

/// Cycle notation over the letters R, B, Y, G; `()` for the identity.
pub fn cycle_notation(p: &ColorPermutation) -> String {
    let mut seen = [false; 4];
    let mut out = String::new();
    for c in basketweave::coloring::Color::ALL {
        if seen[c.index()] || p.apply(c) == c {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = c;
        while !seen[x.index()] {
            seen[x.index()] = true;
            cycle.push(x.to_string());
            x = p.apply(x);
        }
        write!(out, "({})", cycle.join(" ")).unwrap();
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub fn cmd_geometry() -> Result<String> {
    let invariant = |e: geometry::GeometryError| CliError::Invariant(e.to_string());
    let (p, q) = geometry::mount_offsets();
    let config = geometry::four_cell_configuration();
    let four = geometry::four_cell_distances(&config).map_err(invariant)?;
    let min = geometry::min_same_color_distance(&config).map_err(invariant)?;
    let mut out = String::new();
    writeln!(out, "mount offsets: p = {p:.9}, q = {q:.9}").unwrap();
    writeln!(out, "free rotation: {}", geometry::free_rotation_bound()).unwrap();
    writeln!(out, "phase shift: {}", cycle_notation(&geometry::phase_shift_permutation())).unwrap();
    writeln!(
        out,
        "four cells: |ab| = {:.9}, |ac| = {:.9}, |ad| = {:.9}, |ae| = {:.9}",
        four.ab, four.ac, four.ad, four.ae
    )
    .unwrap();
    writeln!(
        out,
        "rectangle at a: {:.9} x {:.9}",
        four.rectangle.0, four.rectangle.1
    )
    .unwrap();
    writeln!(out, "min same-colour distance: {min:.9}").unwrap();
    Ok(out)
}
