//! Coins, local permutations, reflecting shifts and step operators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Configuration, StateGraph, StructureGraph};
use crate::linalg::{self, c, CMatrix, CVector, C64, ONE};

/// Tolerance on `max |C^dagger C - I|` for coin blocks.
pub const UNITARITY_TOL: f64 = 1e-12;

/// `2/d J - I`.
pub fn grover_coin(d: usize) -> Result<CMatrix> {
    if d < 1 {
        return Err(Error::InvalidInput("Grover coin needs d >= 1".into()));
    }
    let off = 2.0 / d as f64;
    Ok(CMatrix::from_fn(d, d, |i, j| if i == j { c(off - 1.0, 0.0) } else { c(off, 0.0) }))
}

/// Hadamard coin in slot order `(+, -)`.
pub fn hadamard() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// Conjugates a coin block by a slot relabeling: slot `i` becomes slot
/// `perm[i]`.
pub fn relabel(coin: &CMatrix, perm: &[usize]) -> CMatrix {
    let q = linalg::permutation_matrix(perm);
    &q * coin * q.adjoint()
}

#[derive(Clone, Debug)]
pub struct CoinSpec {
    blocks: Vec<CMatrix>,
}

impl CoinSpec {
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Self {
        CoinSpec { blocks }
    }

    pub fn grover(sg: &StateGraph) -> Self {
        CoinSpec { blocks: sg.degrees().into_iter().map(|d| grover_coin(d.max(1)).unwrap()).collect() }
    }

    pub fn identity(sg: &StateGraph) -> Self {
        CoinSpec { blocks: sg.degrees().into_iter().map(|d| CMatrix::identity(d, d)).collect() }
    }

    /// Hadamard on every vertex; all vertices must have degree 2.
    pub fn hadamard(sg: &StateGraph) -> Result<Self> {
        for v in 0..sg.vertex_count() {
            if sg.degree(v) != 2 {
                return Err(Error::DimensionMismatch(format!("Hadamard coin needs degree 2, vertex {v} has {}", sg.degree(v))));
            }
        }
        Ok(CoinSpec { blocks: vec![hadamard(); sg.vertex_count()] })
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn matrix(&self) -> CMatrix {
        linalg::block_diagonal(&self.blocks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rotation {
    Identity,
    Cw,
    Ccw,
}

/// Per-vertex permutations of outgoing slots; `maps[v][i]` is the image
/// slot of slot `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationSpec {
    maps: Vec<Vec<usize>>,
}

impl PermutationSpec {
    pub fn from_maps(maps: Vec<Vec<usize>>) -> Self {
        PermutationSpec { maps }
    }

    pub fn rotation_map(d: usize, r: Rotation) -> Vec<usize> {
        match r {
            Rotation::Identity => (0..d).collect(),
            Rotation::Cw => (0..d).map(|i| (i + 1) % d).collect(),
            Rotation::Ccw => (0..d).map(|i| (i + d - 1) % d).collect(),
        }
    }

    pub fn from_rotations(sg: &StateGraph, rotations: &[Rotation]) -> Result<Self> {
        if rotations.len() != sg.vertex_count() {
            return Err(Error::DimensionMismatch(format!("{} local permutations for {} vertices", rotations.len(), sg.vertex_count())));
        }
        let maps = rotations.iter().enumerate().map(|(v, &r)| Self::rotation_map(sg.degree(v), r)).collect();
        Ok(PermutationSpec { maps })
    }

    pub fn uniform(sg: &StateGraph, r: Rotation) -> Self {
        Self::from_rotations(sg, &vec![r; sg.vertex_count()]).unwrap()
    }

    pub fn identity(sg: &StateGraph) -> Self {
        Self::uniform(sg, Rotation::Identity)
    }

    /// CW on one side of the bipartition, CCW on the other.
    pub fn transporting(sg: &StateGraph) -> Result<Self> {
        let side = sg.structure().bipartition().ok_or_else(|| Error::InvalidInput("transporting shift needs a bipartite graph".into()))?;
        let rots: Vec<Rotation> = side.iter().map(|&s| if s == 0 { Rotation::Cw } else { Rotation::Ccw }).collect();
        Self::from_rotations(sg, &rots)
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// Which cyclic rotation the block at `v` is, if any. Degree-2 blocks
    /// report `Cw` for the swap.
    pub fn rotation_at(&self, v: usize) -> Option<Rotation> {
        let d = self.maps[v].len();
        [Rotation::Identity, Rotation::Cw, Rotation::Ccw].into_iter().find(|&r| Self::rotation_map(d, r) == self.maps[v])
    }

    pub fn validate(&self, sg: &StateGraph) -> Result<()> {
        if self.maps.len() != sg.vertex_count() {
            return Err(Error::DimensionMismatch(format!("{} local permutations for {} vertices", self.maps.len(), sg.vertex_count())));
        }
        for (v, m) in self.maps.iter().enumerate() {
            if m.len() != sg.degree(v) {
                return Err(Error::InvalidPermutation { vertex: v, message: format!("size {} for degree {}", m.len(), sg.degree(v)) });
            }
            let mut seen = vec![false; m.len()];
            for &j in m {
                if j >= m.len() || std::mem::replace(&mut seen[j], true) {
                    return Err(Error::InvalidPermutation { vertex: v, message: "not a bijection".into() });
                }
            }
        }
        Ok(())
    }

    /// Global index map over the directed-edge basis.
    pub fn global_map(&self, sg: &StateGraph) -> Vec<usize> {
        let mut out = vec![0; sg.dim()];
        for v in 0..sg.vertex_count() {
            let base = sg.outgoing(v).start;
            for (i, &j) in self.maps[v].iter().enumerate() {
                out[base + i] = base + j;
            }
        }
        out
    }

    pub fn matrix(&self, sg: &StateGraph) -> CMatrix {
        linalg::permutation_matrix(&self.global_map(sg))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `U = P R C`
    U1,
    /// `U = C P R`
    #[default]
    U3,
}

/// `k(i)`: image of basis vector `i` under `R_K`.
pub fn reflect_map(sg: &StateGraph, k: &Configuration) -> Vec<usize> {
    (0..sg.dim())
        .map(|i| match sg.structure_edge(i) {
            Some(e) if k.is_open(e) => sg.partner(i),
            _ => i,
        })
        .collect()
}

pub fn reflecting_shift(sg: &StateGraph, k: &Configuration) -> Result<CMatrix> {
    if k.len() != sg.structure().edge_count() {
        return Err(Error::DimensionMismatch(format!("configuration over {} edges, graph has {}", k.len(), sg.structure().edge_count())));
    }
    Ok(linalg::permutation_matrix(&reflect_map(sg, k)))
}

#[derive(Clone, Debug)]
pub struct WalkSpec {
    sg: StateGraph,
    coin: CoinSpec,
    permutation: PermutationSpec,
    variant: Variant,
    c: CMatrix,
    p: CMatrix,
}

impl WalkSpec {
    pub fn new(sg: StateGraph, coin: CoinSpec, permutation: PermutationSpec, variant: Variant) -> Result<Self> {
        let w = Self::new_unchecked(sg, coin, permutation, variant)?;
        for (v, b) in w.coin.blocks.iter().enumerate() {
            let defect = linalg::unitarity_defect(b);
            if defect > UNITARITY_TOL {
                return Err(Error::NotUnitary { vertex: v, defect });
            }
        }
        Ok(w)
    }

    /// Checks shapes only; unitarity is left to the caller.
    pub fn new_unchecked(sg: StateGraph, coin: CoinSpec, permutation: PermutationSpec, variant: Variant) -> Result<Self> {
        if coin.blocks.len() != sg.vertex_count() {
            return Err(Error::DimensionMismatch(format!("{} coin blocks for {} vertices", coin.blocks.len(), sg.vertex_count())));
        }
        for (v, b) in coin.blocks.iter().enumerate() {
            if b.nrows() != sg.degree(v) || b.ncols() != sg.degree(v) {
                return Err(Error::DimensionMismatch(format!("coin block at vertex {v} is {}x{}, degree is {}", b.nrows(), b.ncols(), sg.degree(v))));
            }
        }
        permutation.validate(&sg)?;
        let c = coin.matrix();
        let p = permutation.matrix(&sg);
        Ok(WalkSpec { sg, coin, permutation, variant, c, p })
    }

    /// Grover coin with the given permutation, on the state graph padded to
    /// degree 3.
    pub fn grover3(g: &StructureGraph, rotation: Rotation, variant: Variant) -> Result<Self> {
        let sg = StateGraph::new(g, Some(3))?;
        let coin = CoinSpec::grover(&sg);
        let perm = PermutationSpec::uniform(&sg, rotation);
        Self::new(sg, coin, perm, variant)
    }

    pub fn state_graph(&self) -> &StateGraph {
        &self.sg
    }

    pub fn structure(&self) -> &StructureGraph {
        self.sg.structure()
    }

    pub fn coin(&self) -> &CoinSpec {
        &self.coin
    }

    pub fn permutation(&self) -> &PermutationSpec {
        &self.permutation
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn dim(&self) -> usize {
        self.sg.dim()
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        WalkSpec { variant, ..self.clone() }
    }

    pub fn coin_matrix(&self) -> &CMatrix {
        &self.c
    }

    pub fn permutation_matrix(&self) -> &CMatrix {
        &self.p
    }

    /// Factors `(A, B)` with `U_K = A R_K B`; `B = None` stands for identity.
    pub fn factors(&self) -> (CMatrix, Option<CMatrix>) {
        match self.variant {
            Variant::U1 => (self.p.clone(), Some(self.c.clone())),
            Variant::U3 => (&self.c * &self.p, None),
        }
    }

    pub fn reflecting_shift(&self, k: &Configuration) -> Result<CMatrix> {
        reflecting_shift(&self.sg, k)
    }

    pub fn step_operator(&self, k: &Configuration) -> Result<CMatrix> {
        let r = self.reflecting_shift(k)?;
        Ok(match self.variant {
            Variant::U1 => &self.p * r * &self.c,
            Variant::U3 => &self.c * &self.p * r,
        })
    }

    /// `U_K^t psi`.
    pub fn apply_fixed(&self, psi: &CVector, k: &Configuration, t: usize) -> Result<CVector> {
        if psi.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("state of length {} for dimension {}", psi.len(), self.dim())));
        }
        let n0 = psi.norm();
        if (n0 - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidState(format!("state norm {n0} is not 1")));
        }
        let u = self.step_operator(k)?;
        let mut out = psi.clone();
        for _ in 0..t {
            out = &u * out;
        }
        let drift = (out.norm() - n0).abs();
        if drift > 1e-8 {
            return Err(Error::Numerical(format!("norm drifted by {drift:e}")));
        }
        Ok(out)
    }
}

/// Serializable description of a walk on a given structure graph.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WalkConfig {
    #[serde(default)]
    pub target_degree: Option<usize>,
    pub coin: CoinConfig,
    #[serde(default = "default_permutation")]
    pub permutation: PermutationConfig,
    #[serde(default)]
    pub variant: Variant,
}

fn default_permutation() -> PermutationConfig {
    PermutationConfig::Preset("identity".into())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoinConfig {
    /// `grover`, `hadamard` or `identity`.
    Preset(String),
    /// Per-vertex blocks as rows of `[re, im]` pairs.
    Blocks { blocks: Vec<Vec<Vec<[f64; 2]>>> },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PermutationConfig {
    /// `identity`, `cw`, `ccw`, `transporting` or `from_coloring` (cyclic
    /// permutations read off a proper edge coloring).
    Preset(String),
    PerVertex(Vec<Rotation>),
    Maps {
        maps: Vec<Vec<usize>>,
    },
}

impl WalkConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self, g: &StructureGraph) -> Result<WalkSpec> {
        let (sg, coin, perm) = self.parts(g)?;
        WalkSpec::new(sg, coin, perm, self.variant)
    }

    /// Like [`WalkConfig::build`] but accepts non-unitary coins.
    pub fn build_unchecked(&self, g: &StructureGraph) -> Result<WalkSpec> {
        let (sg, coin, perm) = self.parts(g)?;
        WalkSpec::new_unchecked(sg, coin, perm, self.variant)
    }

    fn parts(&self, g: &StructureGraph) -> Result<(StateGraph, CoinSpec, PermutationSpec)> {
        let sg = StateGraph::new(g, self.target_degree)?;
        let coin = match &self.coin {
            CoinConfig::Preset(name) => match name.as_str() {
                "grover" => CoinSpec::grover(&sg),
                "hadamard" => CoinSpec::hadamard(&sg)?,
                "identity" => CoinSpec::identity(&sg),
                other => return Err(Error::InvalidInput(format!("unknown coin preset `{other}`"))),
            },
            CoinConfig::Blocks { blocks } => CoinSpec::from_blocks(
                blocks
                    .iter()
                    .map(|rows| {
                        let d = rows.len();
                        if rows.iter().any(|r| r.len() != d) {
                            return Err(Error::DimensionMismatch("coin block is not square".into()));
                        }
                        Ok(CMatrix::from_fn(d, d, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        let perm = match &self.permutation {
            PermutationConfig::Preset(name) => match name.as_str() {
                "identity" => PermutationSpec::identity(&sg),
                "cw" => PermutationSpec::uniform(&sg, Rotation::Cw),
                "ccw" => PermutationSpec::uniform(&sg, Rotation::Ccw),
                "transporting" => PermutationSpec::transporting(&sg)?,
                "from_coloring" => {
                    let colors =
                        crate::grover3::find_structure_coloring(g)?.ok_or_else(|| Error::InvalidInput("graph has no proper 3-edge-coloring".into()))?;
                    crate::grover3::permutations_from_coloring(&sg, &colors, crate::grover3::Phase::Alpha2)?.0
                }
                other => return Err(Error::InvalidInput(format!("unknown permutation preset `{other}`"))),
            },
            PermutationConfig::PerVertex(rots) => PermutationSpec::from_rotations(&sg, rots)?,
            PermutationConfig::Maps { maps } => PermutationSpec::from_maps(maps.clone()),
        };
        Ok((sg, coin, perm))
    }
}

/// Basis vector `|i>`.
pub fn basis_state(dim: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[i] = ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;
    use crate::linalg::{max_abs, max_abs_diff};

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn grover_entries() {
        let g3 = grover_coin(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { -1.0 / 3.0 } else { 2.0 / 3.0 };
                assert!((g3[(i, j)] - c(want, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(grover_coin(1).unwrap()[(0, 0)], ONE);
        assert!(grover_coin(0).is_err());
        let g4 = grover_coin(4).unwrap();
        // direct multiplication
        let mut prod = CMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    prod[(i, j)] += g4[(k, i)].conj() * g4[(k, j)];
                }
            }
        }
        assert!(max_abs_diff(&prod, &CMatrix::identity(4, 4)) < 1e-15);
        assert!((g4[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-15 && (g4[(0, 1)] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn path_reflection_and_standard_shift() {
        let g = corpus("path3");
        let sg = StateGraph::new(&g, Some(2)).unwrap();
        // indices: 0 b1 (B@0), 1 a, 2 c1 (C@1), 3 b2 (B@1), 4 c2 (C@2), 5 d
        let kb = Configuration::from_labels(&g, &["B"]).unwrap();
        assert_eq!(reflect_map(&sg, &kb), vec![3, 1, 2, 0, 4, 5]);
        assert_eq!(reflecting_shift(&sg, &Configuration::empty(&g)).unwrap(), CMatrix::identity(6, 6));

        let w = WalkSpec::new(sg.clone(), CoinSpec::identity(&sg), PermutationSpec::uniform(&sg, Rotation::Cw), Variant::U1).unwrap();
        let s = w.step_operator(&Configuration::all(&g)).unwrap();
        // labels: a=loop@0, b1=B@0, c1=C@1, d=loop@2, c2=C@2, b2=B@1
        let (a, b1, c1, d, c2, b2) = (1, 0, 2, 5, 4, 3);
        for (from, to) in [(a, b1), (b1, c1), (c1, d), (d, c2), (c2, b2), (b2, a)] {
            assert_eq!(s[(to, from)], ONE, "{from} -> {to}");
        }
    }

    #[test]
    fn cube_full_reflection_has_no_fixed_points() {
        let g = corpus("cube");
        let sg = StateGraph::new(&g, Some(3)).unwrap();
        let r = reflecting_shift(&sg, &Configuration::all(&g)).unwrap();
        for i in 0..24 {
            assert_eq!(r[(i, i)], c(0.0, 0.0));
            assert_eq!(r[(sg.partner(i), i)], ONE);
        }
        assert!(max_abs_diff(&(&r * &r), &CMatrix::identity(24, 24)) < 1e-15);
    }

    #[test]
    fn variants_are_conjugate() {
        let g = corpus("cube");
        let w3 = WalkSpec::grover3(&g, Rotation::Identity, Variant::U3).unwrap();
        let w1 = w3.with_variant(Variant::U1);
        let k = Configuration::all(&g);
        let u3 = w3.step_operator(&k).unwrap();
        let u1 = w1.step_operator(&k).unwrap();
        let cm = w3.coin_matrix();
        assert!(linalg::unitarity_defect(&u3) < 1e-12);
        let mut p3 = CMatrix::identity(24, 24);
        let mut p1 = CMatrix::identity(24, 24);
        for _ in 0..5 {
            p3 = &u3 * p3;
            p1 = &u1 * p1;
            assert!(max_abs_diff(&p3, &(cm * &p1 * cm.adjoint())) < 1e-12);
        }
    }

    #[test]
    fn hadamard_line_step() {
        let g = corpus("line5");
        let sg = StateGraph::new(&g, Some(2)).unwrap();
        let w = WalkSpec::new(sg.clone(), CoinSpec::hadamard(&sg).unwrap(), PermutationSpec::uniform(&sg, Rotation::Cw), Variant::U1).unwrap();
        // site x in -2..2 is vertex x + 2; slot 0 is '+', slot 1 is '-'
        let ket = |x: i32, minus: bool| sg.outgoing((x + 2) as usize).start + minus as usize;
        let psi0 = basis_state(sg.dim(), ket(0, true));
        let psi1 = w.apply_fixed(&psi0, &Configuration::all(&g), 1).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut want = CVector::zeros(sg.dim());
        want[ket(1, false)] = c(s, 0.0);
        want[ket(-1, true)] = c(-s, 0.0);
        assert!((psi1 - want).norm() < 1e-15);
        assert_eq!(w.apply_fixed(&psi0, &Configuration::all(&g), 0).unwrap(), psi0);
    }

    #[test]
    fn identity_walk_is_identity() {
        let g = corpus("k4");
        let sg = StateGraph::new(&g, None).unwrap();
        let w = WalkSpec::new(sg.clone(), CoinSpec::identity(&sg), PermutationSpec::identity(&sg), Variant::U3).unwrap();
        let u = w.step_operator(&Configuration::empty(&g)).unwrap();
        assert_eq!(u, CMatrix::identity(sg.dim(), sg.dim()));
    }

    #[test]
    fn rejects_non_unitary_coin() {
        let g = corpus("triangle");
        let sg = StateGraph::new(&g, Some(3)).unwrap();
        let mut blocks = CoinSpec::grover(&sg).blocks().to_vec();
        blocks[1][(0, 0)] += c(0.1, 0.0);
        let res = WalkSpec::new(sg.clone(), CoinSpec::from_blocks(blocks.clone()), PermutationSpec::identity(&sg), Variant::U3);
        assert!(matches!(res, Err(Error::NotUnitary { vertex: 1, .. })));
        assert!(
            WalkSpec::new_unchecked(sg, CoinSpec::from_blocks(blocks), PermutationSpec::identity(&StateGraph::new(&g, Some(3)).unwrap()), Variant::U3).is_ok()
        );
    }

    #[test]
    fn relabel_moves_entries() {
        let h = hadamard();
        let swapped = relabel(&h, &[1, 0]);
        assert_eq!(swapped[(0, 0)], h[(1, 1)]);
        assert!(max_abs(&(relabel(&grover_coin(3).unwrap(), &[2, 0, 1]) - grover_coin(3).unwrap())) < 1e-15);
    }

    #[test]
    fn walk_config_json() {
        let g = corpus("cube");
        let cfg = WalkConfig::from_json(r#"{"target_degree":3,"coin":"grover","permutation":"transporting","variant":"U1"}"#).unwrap();
        let w = cfg.build(&g).unwrap();
        assert_eq!(w.variant(), Variant::U1);
        assert_eq!(w.permutation().rotation_at(0), Some(Rotation::Cw));
        let back = WalkConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
        let explicit = WalkConfig::from_json(r#"{"coin":{"blocks":[[[[1,0]]],[[[0,1]]]]},"permutation":["identity","identity"]}"#).unwrap();
        let two = parse_graph("vertices 2\nedge A 0 1\n").unwrap();
        let w = explicit.build(&two).unwrap();
        assert_eq!(w.coin_matrix()[(1, 1)], c(0.0, 1.0));
        assert!(WalkConfig::from_json(r#"{"coin":"nope"}"#).unwrap().build(&two).is_err());
    }

    #[test]
    fn coloring_preset_is_cyclic() {
        let cfg = WalkConfig::from_json(r#"{"target_degree":3,"coin":"grover","permutation":"from_coloring"}"#).unwrap();
        let w = cfg.build(&corpus("dodecahedron")).unwrap();
        assert!((0..w.state_graph().vertex_count()).all(|v| w.permutation().rotation_at(v).is_some_and(|r| r != Rotation::Identity)));
        assert!(cfg.build(&corpus("petersen")).is_err());
    }
}
