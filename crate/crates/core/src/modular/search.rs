//! Searching for a relabeling of simple objects that carries one set of invariants onto another.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use super::{ModularData, WMatrix};
use crate::cyclotomic::CycloNumber;

/// The invariants compared by [`equivalence_search`]; `w` is optional.
#[derive(Clone, Copy, Debug)]
pub struct Invariants<'a> {
    pub md: &'a ModularData,
    pub w: Option<&'a WMatrix>,
}

impl<'a> Invariants<'a> {
    pub fn modular(md: &'a ModularData) -> Self {
        Invariants { md, w: None }
    }

    pub fn with_w(md: &'a ModularData, w: &'a WMatrix) -> Self {
        Invariants { md, w: Some(w) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub equivalent: bool,
    /// `witness[a] = π(a)` when equivalent.
    pub witness: Option<Vec<usize>>,
    pub reason: Option<String>,
    /// Objects of the second set still allowed as `π(a)` after refinement.
    pub candidates: Vec<Vec<usize>>,
    /// Partial assignments visited by the backtracking.
    pub nodes: u64,
    pub uses_w: bool,
}

/// Exact value identities, shared across every matrix being compared.
#[derive(Default)]
struct Interner {
    ids: HashMap<Vec<(u32, BigRational)>, u32>,
}

impl Interner {
    fn id(&mut self, x: &CycloNumber, order: u32) -> u32 {
        let key: Vec<(u32, BigRational)> = x
            .lift_to(order)
            .coeffs()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .map(|(j, c)| (j as u32, c))
            .collect();
        let next = self.ids.len() as u32;
        *self.ids.entry(key).or_insert(next)
    }
}

/// Interned `S`, `W` and per-object data of one side.
struct Side {
    s: Vec<Vec<u32>>,
    w: Option<Vec<Vec<u32>>>,
    dims: Vec<i64>,
    twists: Vec<u32>,
}

fn intern_side(inv: &Invariants, order: u32, ids: &mut Interner) -> Side {
    let md = inv.md;
    let mat = |m: &Vec<Vec<CycloNumber>>, ids: &mut Interner| -> Vec<Vec<u32>> {
        m.iter().map(|r| r.iter().map(|v| ids.id(v, order)).collect()).collect()
    };
    Side {
        s: mat(&md.s, ids),
        w: inv.w.map(|w| mat(&w.w, ids)),
        dims: md.dims.clone(),
        twists: md.twists.iter().map(|t| ids.id(&t.to_cyclo(), order)).collect(),
    }
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// Joint color refinement of the objects of both sides: an object's color records its
/// dimension, twist, whether it is the unit, and the multisets of its `S` and `W` rows
/// against the colors of the other objects. Colors are comparable across the two sides.
fn refine(sides: [&Side; 2]) -> [Vec<u32>; 2] {
    let n = sides[0].dims.len();
    let mut table: HashMap<Vec<i64>, u32> = HashMap::new();
    let intern = |key: Vec<i64>, table: &mut HashMap<Vec<i64>, u32>| {
        let next = table.len() as u32;
        *table.entry(key).or_insert(next)
    };
    let mut colors: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
    for (k, side) in sides.iter().enumerate() {
        colors[k] = (0..n)
            .map(|a| {
                let mut key = vec![(a == 0) as i64, side.dims[a], side.twists[a] as i64, -1];
                key.extend(sorted(side.s[a].clone()).into_iter().map(i64::from));
                if let Some(w) = &side.w {
                    key.push(-1);
                    key.extend(sorted(w[a].clone()).into_iter().map(i64::from));
                }
                intern(key, &mut table)
            })
            .collect();
    }
    let count = |c: &[Vec<u32>; 2]| {
        let mut all: Vec<u32> = c[0].iter().chain(&c[1]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    loop {
        let before = count(&colors);
        table.clear();
        let mut next: [Vec<u32>; 2] = [Vec::new(), Vec::new()];
        for (k, side) in sides.iter().enumerate() {
            next[k] = (0..n)
                .map(|a| {
                    let mut nbrs: Vec<(u32, u32, u32)> = (0..n)
                        .map(|b| {
                            let w = side.w.as_ref().map_or(0, |w| w[a][b]);
                            (colors[k][b], side.s[a][b], w)
                        })
                        .collect();
                    nbrs.sort_unstable();
                    let mut key = vec![colors[k][a] as i64];
                    for (c, s, w) in nbrs {
                        key.extend([c as i64, s as i64, w as i64]);
                    }
                    intern(key, &mut table)
                })
                .collect();
        }
        colors = next;
        if count(&colors) == before {
            return colors;
        }
    }
}

struct Backtrack<'a> {
    x: &'a Side,
    y: &'a Side,
    order: Vec<usize>,
    candidates: &'a [Vec<usize>],
    assign: Vec<Option<usize>>,
    used: Vec<bool>,
    nodes: u64,
}

impl Backtrack<'_> {
    fn consistent(&self, a: usize, b: usize) -> bool {
        if self.x.s[a][a] != self.y.s[b][b] {
            return false;
        }
        self.assign.iter().enumerate().all(|(a2, img)| match img {
            None => true,
            Some(b2) => {
                self.x.s[a][a2] == self.y.s[b][*b2]
                    && match (&self.x.w, &self.y.w) {
                        (Some(wx), Some(wy)) => wx[a][a2] == wy[b][*b2] && wx[a2][a] == wy[*b2][b],
                        _ => true,
                    }
            }
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let a = self.order[depth];
        for i in 0..self.candidates[a].len() {
            let b = self.candidates[a][i];
            if self.used[b] || !self.consistent(a, b) {
                continue;
            }
            self.nodes += 1;
            self.assign[a] = Some(b);
            self.used[b] = true;
            if self.run(depth + 1) {
                return true;
            }
            self.assign[a] = None;
            self.used[b] = false;
        }
        false
    }
}

/// Decides whether some bijection `π` with `π(0) = 0` satisfies `d_{π(a)} = d_a`,
/// `θ_{π(a)} = θ_a`, `S_{π(a)π(b)} = S_{ab}` and, if both sides carry one,
/// `W_{π(a)π(b)} = W_{ab}`.
pub fn equivalence_search(x: &Invariants, y: &Invariants) -> SearchOutcome {
    let n = x.md.rank();
    let uses_w = x.w.is_some() && y.w.is_some();
    let fail = |reason: String, candidates: Vec<Vec<usize>>, nodes| SearchOutcome {
        equivalent: false,
        witness: None,
        reason: Some(reason),
        candidates,
        nodes,
        uses_w,
    };
    if y.md.rank() != n {
        return fail(format!("ranks differ: {} vs {}", n, y.md.rank()), Vec::new(), 0);
    }
    let order = x.md.order.max(y.md.order);
    let order = if order % x.md.order == 0 && order % y.md.order == 0 {
        order
    } else {
        x.md.order * y.md.order
    };
    let mut ids = Interner::default();
    let sx = intern_side(&Invariants { md: x.md, w: x.w.filter(|_| uses_w) }, order, &mut ids);
    let sy = intern_side(&Invariants { md: y.md, w: y.w.filter(|_| uses_w) }, order, &mut ids);
    let [cx, cy] = refine([&sx, &sy]);
    let candidates: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| cy[b] == cx[a]).collect()).collect();
    let mut classes: HashMap<u32, (usize, usize)> = HashMap::new();
    for a in 0..n {
        classes.entry(cx[a]).or_default().0 += 1;
        classes.entry(cy[a]).or_default().1 += 1;
    }
    if let Some(a) = (0..n).find(|&a| {
        let (l, r) = classes[&cx[a]];
        l != r
    }) {
        let (l, r) = classes[&cx[a]];
        let reason = format!(
            "refinement: the class of {} has {l} members on the first side and {r} on the second",
            x.md.labels[a]
        );
        return fail(reason, candidates, 0);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (candidates[a].len(), a));
    let mut bt = Backtrack {
        x: &sx,
        y: &sy,
        order,
        candidates: &candidates,
        assign: vec![None; n],
        used: vec![false; n],
        nodes: 0,
    };
    let found = bt.run(0);
    let (nodes, assign) = (bt.nodes, bt.assign);
    if found {
        let witness = assign.iter().map(|b| b.expect("complete assignment")).collect();
        SearchOutcome { equivalent: true, witness: Some(witness), reason: None, candidates, nodes, uses_w }
    } else {
        fail("backtracking exhausted every candidate assignment".into(), candidates, nodes)
    }
}

/// Groups indices whose invariants are pairwise equivalent.
pub fn equivalence_classes(items: &[Invariants]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..items.len() {
        match classes
            .iter_mut()
            .find(|c| equivalence_search(&items[c[0]], &items[i]).equivalent)
        {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// The two-object argument: `T` restricts the image of `anchor` and of `target`,
/// while `W_{π(anchor) π(target)} = W_{anchor target}` restricts `π(target)` again.
#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub anchor: String,
    pub anchor_images: Vec<String>,
    pub target: String,
    /// Same dimension and twist as `target`.
    pub t_allowed: Vec<String>,
    /// Objects `c` with `W_{β c} = W_{anchor target}` for some allowed image `β` of the anchor.
    pub w_required: Vec<String>,
    pub contradiction: bool,
}

fn same_dt(x: &ModularData, y: &ModularData, a: usize) -> Vec<usize> {
    (0..y.rank())
        .filter(|&b| y.dims[b] == x.dims[a] && y.twists[b] == x.twists[a])
        .collect()
}

pub fn obstruction(x: &ModularData, wx: &WMatrix, y: &ModularData, wy: &WMatrix, anchor: usize, target: usize) -> Obstruction {
    let anchor_images = same_dt(x, y, anchor);
    let t_allowed = same_dt(x, y, target);
    let value = &wx.w[anchor][target];
    let mut w_required: Vec<usize> = anchor_images
        .iter()
        .flat_map(|&beta| (0..y.rank()).filter(move |&c| y.dims[c] == x.dims[target] && wy.w[beta][c] == *value))
        .collect();
    w_required.sort_unstable();
    w_required.dedup();
    let contradiction = !t_allowed.iter().any(|c| w_required.contains(c));
    let names = |v: &[usize]| v.iter().map(|&i| y.labels[i].clone()).collect();
    Obstruction {
        anchor: x.labels[anchor].clone(),
        anchor_images: names(&anchor_images),
        target: x.labels[target].clone(),
        t_allowed: names(&t_allowed),
        w_required: names(&w_required),
        contradiction,
    }
}
