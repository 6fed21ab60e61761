//! Output documents. Each serializes to JSON in field declaration order and
//! renders the same numbers as a plain-text table.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use trisurf_core::abc::{AbcType, BidoubleType};
use trisurf_core::abc::{
    BidoubleInvariants, Classification, DiffeoClass, KsqConvention, NondefReport,
};
use trisurf_core::hyperelliptic::MoebiusMap;
use trisurf_core::triangle::TripleRecord;
use trisurf_core::{PermGroup, ScanEntry, SurfaceInvariants};

pub trait Report: Serialize {
    fn human(&self) -> String;

    fn csv(&self) -> Option<String> {
        None
    }
}

fn images(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn letters(v: &[i32]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassInfo {
    pub representative: Vec<usize>,
    pub size: usize,
    pub element_order: u32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupInfo {
    pub group: String,
    pub degree: usize,
    pub order: usize,
    pub abelian: bool,
    pub simple: bool,
    pub generators: Vec<Vec<usize>>,
    pub classes: Vec<ClassInfo>,
}

impl GroupInfo {
    pub fn new(g: &PermGroup) -> Self {
        GroupInfo {
            group: g.label().to_string(),
            degree: g.degree(),
            order: g.order(),
            abelian: g.is_abelian(),
            simple: g.is_simple(),
            generators: g
                .generators()
                .iter()
                .map(|p| p.images_one_based())
                .collect(),
            classes: g
                .classes()
                .iter()
                .map(|c| ClassInfo {
                    representative: g.element(c.representative).images_one_based(),
                    size: c.len(),
                    element_order: g.element_order(c.representative),
                })
                .collect(),
        }
    }
}

impl Report for GroupInfo {
    fn human(&self) -> String {
        let mut s = String::new();
        writeln!(s, "group      {}", self.group).unwrap();
        writeln!(s, "degree     {}", self.degree).unwrap();
        writeln!(s, "order      {}", self.order).unwrap();
        writeln!(s, "abelian    {}", self.abelian).unwrap();
        writeln!(s, "simple     {}", self.simple).unwrap();
        for g in &self.generators {
            writeln!(s, "generator  {}", images(g)).unwrap();
        }
        writeln!(s, "classes    {}", self.classes.len()).unwrap();
        writeln!(s, "{:>6} {:>6}  representative", "size", "order").unwrap();
        for c in &self.classes {
            writeln!(
                s,
                "{:>6} {:>6}  {}",
                c.size,
                c.element_order,
                images(&c.representative)
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TripleList(pub Vec<TripleRecord>);

fn type_string(t: &[u32; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

impl Report for TripleList {
    fn human(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} triples", self.0.len()).unwrap();
        for (i, t) in self.0.iter().enumerate() {
            writeln!(
                s,
                "{:>5}  type {}  genus {}  a = {}  b = {}  c = {}",
                i + 1,
                type_string(&t.triple_type),
                t.genus,
                images(&t.a),
                images(&t.b),
                images(&t.c)
            )
            .unwrap();
        }
        s
    }

    fn csv(&self) -> Option<String> {
        let rows = self
            .0
            .iter()
            .map(|t| {
                vec![
                    t.group.clone(),
                    images(&t.a),
                    images(&t.b),
                    images(&t.c),
                    type_string(&t.triple_type),
                    t.genus.to_string(),
                ]
            })
            .collect();
        Some(csv_table(&["group", "a", "b", "c", "type", "genus"], rows))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StructureRecord {
    pub t1: TripleRecord,
    pub t2: TripleRecord,
    pub triples_unmarked_equivalent: Option<bool>,
    pub invariants: SurfaceInvariants,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub group: String,
    pub order: usize,
    pub beauville: bool,
    pub structures_found: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_orbits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structures: Option<Vec<StructureRecord>>,
}

impl Report for SearchReport {
    fn human(&self) -> String {
        let mut s = String::new();
        writeln!(s, "group             {}", self.group).unwrap();
        writeln!(s, "order             {}", self.order).unwrap();
        writeln!(s, "beauville         {}", self.beauville).unwrap();
        writeln!(s, "structures_found  {}", self.structures_found).unwrap();
        if let Some(n) = self.aut_orbits {
            writeln!(s, "aut_orbits        {n}").unwrap();
        }
        for (i, st) in self.structures.iter().flatten().enumerate() {
            let inv = &st.invariants;
            let unmarked = match st.triples_unmarked_equivalent {
                Some(b) => b.to_string(),
                None => "unknown".into(),
            };
            writeln!(
                s,
                "{:>5}  T1 {} g={} [{} | {}]  T2 {} g={} [{} | {}]  chi={} ksq={} e={} tau={}  unmarked_equivalent={}",
                i + 1,
                type_string(&st.t1.triple_type),
                st.t1.genus,
                images(&st.t1.a),
                images(&st.t1.b),
                type_string(&st.t2.triple_type),
                st.t2.genus,
                images(&st.t2.a),
                images(&st.t2.b),
                inv.chi,
                inv.ksq,
                inv.e,
                inv.tau,
                unmarked
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScanReport(pub Vec<ScanEntry>);

impl Report for ScanReport {
    fn human(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{:<16} {:>6} {:>9} {:>16} {:>10}",
            "group", "order", "beauville", "structures_found", "elapsed_ms"
        )
        .unwrap();
        for e in &self.0 {
            write!(
                s,
                "{:<16} {:>6} {:>9} {:>16} {:>10}",
                e.group, e.order, e.beauville, e.structures_found, e.elapsed_ms
            )
            .unwrap();
            if let Some(err) = &e.error {
                write!(s, "  error: {err}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    fn csv(&self) -> Option<String> {
        let rows = self
            .0
            .iter()
            .map(|e| {
                vec![
                    e.group.clone(),
                    e.order.to_string(),
                    e.beauville.to_string(),
                    e.structures_found.to_string(),
                    e.elapsed_ms.to_string(),
                    e.error.clone().unwrap_or_default(),
                ]
            })
            .collect();
        Some(csv_table(
            &[
                "group",
                "order",
                "beauville",
                "structures_found",
                "elapsed_ms",
                "error",
            ],
            rows,
        ))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Invariants(pub SurfaceInvariants);

impl Report for Invariants {
    fn human(&self) -> String {
        let i = &self.0;
        format!(
            "chi  {}\nksq  {}\ne    {}\ntau  {}\n",
            i.chi, i.ksq, i.e, i.tau
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AbcInvariants {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub chi: i64,
    pub ksq: i64,
    pub ksq_paper: i64,
    pub e: i64,
    pub tau: i64,
    pub below_standard_bound: bool,
}

impl AbcInvariants {
    pub fn new([a, b, c, d]: [i64; 4], inv: &BidoubleInvariants) -> Self {
        AbcInvariants {
            a,
            b,
            c,
            d,
            chi: inv.invariants.chi,
            ksq: inv.invariants.ksq,
            ksq_paper: inv.ksq_paper,
            e: inv.invariants.e,
            tau: inv.invariants.tau,
            below_standard_bound: inv.below_standard_bound,
        }
    }
}

impl Report for AbcInvariants {
    fn human(&self) -> String {
        let mut s = format!(
            "type       ({},{}),({},{})\nchi        {}\nksq        {}\nksq_paper  {}\ne          {}\ntau        {}\n",
            2 * self.a,
            2 * self.b,
            2 * self.c,
            2 * self.d,
            self.chi,
            self.ksq,
            self.ksq_paper,
            self.e,
            self.tau
        );
        if self.below_standard_bound {
            s.push_str("note       entries below 3\n");
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiffeoReport {
    pub from: [i64; 3],
    pub to: [i64; 3],
    pub same_key: bool,
    pub equivalent: bool,
    pub steps: Option<usize>,
    pub chain: Option<Vec<[i64; 3]>>,
}

fn triple(t: &AbcType) -> [i64; 3] {
    [t.a, t.b, t.c]
}

impl DiffeoReport {
    pub fn new(s: &AbcType, t: &AbcType, chain: Option<&[AbcType]>) -> Self {
        DiffeoReport {
            from: triple(s),
            to: triple(t),
            same_key: s.diffeo_key() == t.diffeo_key(),
            equivalent: chain.is_some(),
            steps: chain.map(|c| c.len() - 1),
            chain: chain.map(|c| c.iter().map(triple).collect()),
        }
    }
}

impl Report for DiffeoReport {
    fn human(&self) -> String {
        let fmt = |t: &[i64; 3]| format!("({},{},{})", t[0], t[1], t[2]);
        let mut s = format!(
            "from        {}\nto          {}\nsame_key    {}\nequivalent  {}\n",
            fmt(&self.from),
            fmt(&self.to),
            self.same_key,
            self.equivalent
        );
        if let (Some(n), Some(chain)) = (self.steps, &self.chain) {
            let parts: Vec<String> = chain.iter().map(fmt).collect();
            writeln!(s, "steps       {n}").unwrap();
            writeln!(s, "chain       {}", parts.join(" -> ")).unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClauseResult {
    pub clause: String,
    pub holds: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NondefOut {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub k: i64,
    pub types: [[i64; 3]; 2],
    pub conditions: Vec<ClauseResult>,
    pub failing: Vec<String>,
    pub verdict: bool,
}

impl NondefOut {
    pub fn new(r: &NondefReport) -> Self {
        let (s, t) = r.compared_types();
        NondefOut {
            a: r.a,
            b: r.b,
            c: r.c,
            k: r.k,
            types: [triple(&s), triple(&t)],
            conditions: r
                .conditions
                .iter()
                .map(|(c, holds)| ClauseResult {
                    clause: c.label().to_string(),
                    holds: *holds,
                })
                .collect(),
            failing: r.failing().iter().map(|c| c.label().to_string()).collect(),
            verdict: r.verdict,
        }
    }
}

impl Report for NondefOut {
    fn human(&self) -> String {
        let [s1, s2] = self.types;
        let mut s = format!(
            "types    ({},{}),({},{}) vs ({},{}),({},{})\n",
            2 * s1[0],
            2 * s1[1],
            2 * s1[2],
            2 * s1[1],
            2 * s2[0],
            2 * s2[1],
            2 * s2[2],
            2 * s2[1]
        );
        for c in &self.conditions {
            let mark = if c.holds { "holds" } else { "fails" };
            writeln!(s, "({:<3})    {mark}", c.clause).unwrap();
        }
        if !self.failing.is_empty() {
            writeln!(s, "failing  {}", self.failing.join(", ")).unwrap();
        }
        writeln!(s, "verdict  {}", self.verdict).unwrap();
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub chi: i64,
    pub ksq: i64,
    pub bound: i64,
    pub convention: KsqConvention,
    pub types: Vec<BidoubleType>,
    pub diffeo_classes: Vec<DiffeoClass>,
}

impl ClassifyReport {
    pub fn new(
        chi: i64,
        ksq: i64,
        bound: i64,
        convention: KsqConvention,
        c: Classification,
    ) -> Self {
        ClassifyReport {
            chi,
            ksq,
            bound,
            convention,
            types: c.types,
            diffeo_classes: c.diffeo_classes,
        }
    }
}

impl Report for ClassifyReport {
    fn human(&self) -> String {
        let mut s = format!(
            "chi {}  ksq {} ({:?})  entries 3..={}\n{} types\n",
            self.chi,
            self.ksq,
            self.convention,
            self.bound,
            self.types.len()
        );
        for t in &self.types {
            writeln!(s, "  ({},{}),({},{})", 2 * t.a, 2 * t.b, 2 * t.c, 2 * t.d).unwrap();
        }
        writeln!(s, "{} diffeomorphism classes", self.diffeo_classes.len()).unwrap();
        for class in &self.diffeo_classes {
            let members: Vec<String> = class
                .members
                .iter()
                .map(|m| format!("({},{},{})", m.a, m.b, m.c))
                .collect();
            writeln!(
                s,
                "  b={} a+c={}: {}",
                class.b,
                class.a_plus_c,
                members.join(" ")
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BranchReport {
    pub genus: i64,
    pub param: String,
    pub points: Vec<String>,
}

impl Report for BranchReport {
    fn human(&self) -> String {
        format!(
            "genus   {}\nparam   {}\npoints  {{{}}}\n",
            self.genus,
            self.param,
            self.points.join(", ")
        )
    }
}

/// Matrix entries are rationals written as strings such as `"-1/2"`.
#[derive(Debug, Serialize, Deserialize)]
pub struct IsoReport {
    pub equivalent: bool,
    pub map: Option<[[String; 2]; 2]>,
}

impl IsoReport {
    pub fn new(map: Option<&MoebiusMap>) -> Self {
        IsoReport {
            equivalent: map.is_some(),
            map: map.map(|m| {
                let e = m.matrix();
                [
                    [e[0][0].to_string(), e[0][1].to_string()],
                    [e[1][0].to_string(), e[1][1].to_string()],
                ]
            }),
        }
    }
}

impl Report for IsoReport {
    fn human(&self) -> String {
        let mut s = format!("equivalent  {}\n", self.equivalent);
        if let Some(m) = &self.map {
            writeln!(
                s,
                "map         [[{}, {}], [{}, {}]]",
                m[0][0], m[0][1], m[1][0], m[1][1]
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EqualReport {
    pub strands: usize,
    pub equal: bool,
}

impl Report for EqualReport {
    fn human(&self) -> String {
        format!("strands  {}\nequal    {}\n", self.strands, self.equal)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProductReport {
    pub strands: usize,
    pub factors: Vec<Vec<i32>>,
    pub product: Vec<i32>,
}

impl Report for ProductReport {
    fn human(&self) -> String {
        let factors: Vec<String> = self.factors.iter().map(|f| letters(f)).collect();
        format!(
            "strands  {}\nfactors  {}\nproduct  {}\n",
            self.strands,
            factors.join(" "),
            letters(&self.product)
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub strands: usize,
    pub size: usize,
    pub exhausted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<Vec<i32>>>>,
}

impl Report for OrbitReport {
    fn human(&self) -> String {
        let mut s = format!(
            "strands    {}\nsize       {}\nexhausted  {}\n",
            self.strands, self.size, self.exhausted
        );
        for (i, r) in self.representatives.iter().flatten().enumerate() {
            let parts: Vec<String> = r.iter().map(|f| letters(f)).collect();
            writeln!(s, "{:>5}  {}", i + 1, parts.join(" ")).unwrap();
        }
        s
    }
}
