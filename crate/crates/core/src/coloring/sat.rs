//! Window colourings as a SAT instance: variable `4k + c` says tile `k`
//! has colour `c`.

use varisat::{ExtendFormula, Lit, Solver};

use super::color::{Color, ColorSet};
use super::propagate::WindowGraph;

pub(crate) struct SatColoring {
    solver: Solver<'static>,
    domains: Vec<ColorSet>,
    adj: Vec<Vec<usize>>,
}

fn lit(k: usize, c: Color) -> Lit {
    Lit::from_index(4 * k + c.index(), true)
}

impl SatColoring {
    /// Proper colourings of the graph with every tile restricted to its
    /// domain.
    pub(crate) fn new(graph: &WindowGraph, domains: &[ColorSet]) -> Self {
        let mut solver = Solver::new();
        let adj: Vec<Vec<usize>> = (0..graph.len()).map(|k| graph.neighbors(k).collect()).collect();
        for k in 0..graph.len() {
            solver.add_clause(&Color::ALL.map(|c| lit(k, c)));
            for (x, &a) in Color::ALL.iter().enumerate() {
                for &b in &Color::ALL[x + 1..] {
                    solver.add_clause(&[!lit(k, a), !lit(k, b)]);
                }
            }
            for &u in adj[k].iter().filter(|&&u| u > k) {
                for c in Color::ALL {
                    solver.add_clause(&[!lit(k, c), !lit(u, c)]);
                }
            }
            for c in domains[k].complement().iter() {
                solver.add_clause(&[!lit(k, c)]);
            }
        }
        SatColoring {
            solver,
            domains: domains.to_vec(),
            adj,
        }
    }

    fn model(&self) -> Vec<Color> {
        let n = self.domains.len();
        let mut colors = vec![Color::R; n];
        for l in self.solver.model().expect("called after a satisfiable solve") {
            if l.is_positive() && l.index() < 4 * n {
                colors[l.index() / 4] = Color::from_index(l.index() % 4);
            }
        }
        colors
    }

    fn solve(&mut self, assumptions: &[Lit]) -> bool {
        self.solver.assume(assumptions);
        self.solver.solve().expect("in-memory solving does not fail")
    }

    /// Some colouring, if one exists.
    pub(crate) fn solve_any(&mut self) -> Option<Vec<Color>> {
        self.solve(&[]).then(|| self.model())
    }

    /// Pairs supported by `sol`: its own colours, plus every colour a tile
    /// could switch to without clashing with its neighbours in `sol`.
    fn witness(&self, sol: &[Color], supported: &mut [ColorSet]) {
        for (k, &c) in sol.iter().enumerate() {
            supported[k].insert(c);
            let used: ColorSet = self.adj[k].iter().map(|&u| sol[u]).collect();
            for d in self.domains[k].iter().filter(|&d| !used.contains(d)) {
                supported[k].insert(d);
            }
        }
    }

    /// Colours each tile takes in some colouring; `None` when there is no
    /// colouring at all.
    ///
    /// Each round asks for a colouring that realises at least one pair not
    /// yet witnessed. A satisfiable round witnesses every pair of its
    /// model; an unsatisfiable one shows that none of the open pairs is
    /// supported.
    pub(crate) fn supports(&mut self) -> Option<Vec<ColorSet>> {
        let first = self.solve_any()?;
        let mut supported = vec![ColorSet::EMPTY; self.domains.len()];
        self.witness(&first, &mut supported);
        loop {
            let open: Vec<Lit> = (0..self.domains.len())
                .flat_map(|k| {
                    let s = supported[k];
                    self.domains[k].iter().filter(move |&c| !s.contains(c)).map(move |c| lit(k, c))
                })
                .collect();
            if open.is_empty() {
                break;
            }
            let select = self.solver.new_lit();
            let mut clause = open;
            clause.push(!select);
            self.solver.add_clause(&clause);
            let sat = self.solve(&[select]);
            if sat {
                let sol = self.model();
                self.witness(&sol, &mut supported);
            }
            self.solver.add_clause(&[!select]);
            if !sat {
                break;
            }
        }
        Some(supported)
    }

    /// Colour of every tile that has the same colour in all colourings;
    /// `None` when there is no colouring at all.
    pub(crate) fn backbone(&mut self) -> Option<Vec<Option<Color>>> {
        let first = self.solve_any()?;
        let mut fixed: Vec<Option<Color>> = first.iter().map(|&c| Some(c)).collect();
        self.unfix(&first, &mut fixed);
        loop {
            let open: Vec<Lit> = fixed
                .iter()
                .enumerate()
                .filter(|&(k, f)| f.is_some() && self.domains[k].len() > 1)
                .map(|(k, f)| !lit(k, f.unwrap()))
                .collect();
            if open.is_empty() {
                break;
            }
            let select = self.solver.new_lit();
            let mut clause = open;
            clause.push(!select);
            self.solver.add_clause(&clause);
            let sat = self.solve(&[select]);
            if sat {
                let sol = self.model();
                self.unfix(&sol, &mut fixed);
            }
            self.solver.add_clause(&[!select]);
            if !sat {
                break;
            }
        }
        Some(fixed)
    }

    /// Clears every tile that `sol`, or a single recolouring of it, shows
    /// in a colour other than its candidate.
    fn unfix(&self, sol: &[Color], fixed: &mut [Option<Color>]) {
        let mut alt = vec![ColorSet::EMPTY; sol.len()];
        self.witness(sol, &mut alt);
        for (k, f) in fixed.iter_mut().enumerate() {
            if f.is_some_and(|c| alt[k] != ColorSet::single(c)) {
                *f = None;
            }
        }
    }
}
