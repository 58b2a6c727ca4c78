//! Identifying codes: signatures, the seepage-coloring view, and the motif
//! families of size-10 codes on the soccer ball graph.

use std::fmt;

use crate::graph::{Graph, NodeId, NodeSet, Patch, SbgLabel};

/// A candidate code `V' ⊆ V`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeSet(NodeSet);

impl CodeSet {
    pub fn new(members: NodeSet) -> Self {
        Self(members)
    }

    pub fn members(&self) -> &NodeSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.contains(v)
    }

    /// Looks up every name in `g`, failing on the first unknown one.
    pub fn from_names<S: AsRef<str>>(g: &Graph, names: &[S]) -> Result<Self, String> {
        names
            .iter()
            .map(|n| {
                g.node_by_name(n.as_ref())
                    .ok_or_else(|| n.as_ref().to_string())
            })
            .collect::<Result<NodeSet, _>>()
            .map(Self)
    }

    /// Member names, sorted.
    pub fn names(&self, g: &Graph) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(|n| g.name(n).to_string()).collect();
        v.sort();
        v
    }
}

impl FromIterator<NodeId> for CodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Whether every node must be covered by at least one code node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Domination {
    #[default]
    Required,
    /// Plain separation: one node may keep an empty signature.
    NotRequired,
}

/// `N+(v) ∩ V'` for every node `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureTable {
    code: CodeSet,
    signatures: Vec<NodeSet>,
}

impl SignatureTable {
    pub fn code(&self) -> &CodeSet {
        &self.code
    }

    pub fn get(&self, v: NodeId) -> &NodeSet {
        &self.signatures[v.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, &NodeSet)> {
        self.signatures
            .iter()
            .enumerate()
            .map(|(i, s)| (NodeId(i), s))
    }

    /// Whether all signatures are pairwise distinct.
    pub fn all_distinct(&self) -> bool {
        let mut sorted: Vec<&NodeSet> = self.signatures.iter().collect();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Renders each node's signature as a color string.
    ///
    /// Code nodes in `palette` order get colors `A`, `B`, ... (code nodes
    /// missing from `palette` follow in id order). A color is starred at the
    /// node it was injected into, so the injected node of `A` shows `A*`.
    pub fn color_strings(&self, palette: &[NodeId]) -> Vec<String> {
        let mut order: Vec<NodeId> = palette
            .iter()
            .copied()
            .filter(|v| self.code.contains(*v))
            .collect();
        for v in self.code.members().iter() {
            if !order.contains(&v) {
                order.push(v);
            }
        }
        let color = |i: usize| -> String {
            if i < 26 {
                char::from(b'A' + i as u8).to_string()
            } else {
                format!("[{i}]")
            }
        };
        self.iter()
            .map(|(v, sig)| {
                let mut s = String::new();
                for (i, &c) in order.iter().enumerate() {
                    if sig.contains(c) {
                        s.push_str(&color(i));
                        if c == v {
                            s.push('*');
                        }
                    }
                }
                s
            })
            .collect()
    }
}

/// Computes `N+(v) ∩ V'` for every node.
pub fn signatures(g: &Graph, c: &CodeSet) -> SignatureTable {
    let signatures = g
        .nodes()
        .map(|v| {
            g.closed_neighborhood(v)
                .expect("node in range")
                .intersection(c.members())
        })
        .collect();
    SignatureTable {
        code: c.clone(),
        signatures,
    }
}

/// The colors each node ends up with when a distinct color is injected at
/// every node of `injected` and seeps into its neighbors. Identical to
/// [`signatures`].
pub fn seepage_coloring(g: &Graph, injected: &CodeSet) -> SignatureTable {
    signatures(g, injected)
}

pub fn is_ics(g: &Graph, c: &CodeSet, domination: Domination) -> bool {
    let table = signatures(g, c);
    if domination == Domination::Required && table.signatures.iter().any(NodeSet::is_empty) {
        return false;
    }
    table.all_distinct()
}

/// Motif family of a size-10 soccer ball code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotifClass {
    I,
    IIA,
    IIB,
    IIIA,
    IIIB,
    IV,
}

impl MotifClass {
    /// Class with the A/B subdivision dropped.
    pub fn family(self) -> Family {
        match self {
            MotifClass::I => Family::I,
            MotifClass::IIA | MotifClass::IIB => Family::II,
            MotifClass::IIIA | MotifClass::IIIB => Family::III,
            MotifClass::IV => Family::IV,
        }
    }
}

impl fmt::Display for MotifClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MotifClass::I => "I",
            MotifClass::IIA => "II-A",
            MotifClass::IIB => "II-B",
            MotifClass::IIIA => "III-A",
            MotifClass::IIIB => "III-B",
            MotifClass::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One member of a motif family, with its translation index `j` (1..=5;
/// always 1 for class I).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifSet {
    pub class: MotifClass,
    pub shift: u8,
    pub code: CodeSet,
}

fn labels_to_code(labels: impl IntoIterator<Item = SbgLabel>) -> CodeSet {
    labels
        .into_iter()
        .map(|l| NodeId(l.canonical_index()))
        .collect()
}

fn class_two_a(j: i32) -> Vec<SbgLabel> {
    use Patch::{H, P};
    let r = SbgLabel::ring;
    vec![
        r(P, 1, 1),
        r(P, 3, j),
        r(P, 3, j + 1),
        r(P, 4, j),
        r(P, 4, j + 1),
        r(P, 4, j + 2),
        r(H, 3, j + 3),
        r(H, 3, j + 4),
        r(H, 4, j + 3),
        r(H, 5, j + 3),
    ]
}

fn class_three_a(j: i32) -> Vec<SbgLabel> {
    use Patch::{H, P};
    let r = SbgLabel::ring;
    vec![
        r(P, 1, 1),
        r(P, 3, j),
        r(P, 3, j + 1),
        r(P, 3, j + 2),
        r(P, 3, j + 4),
        r(P, 4, j + 1),
        r(H, 4, j + 3),
        r(H, 5, j + 2),
        r(H, 5, j + 3),
        r(H, 5, j + 4),
    ]
}

fn class_four(j: i32) -> Vec<SbgLabel> {
    use Patch::H;
    let r = SbgLabel::ring;
    vec![
        r(H, 2, j + 1),
        r(H, 2, j + 2),
        r(H, 3, j + 1),
        r(H, 3, j + 2),
        r(H, 4, j + 1),
        r(H, 3, j + 4),
        r(H, 4, j + 3),
        r(H, 4, j + 4),
        r(H, 5, j + 3),
        r(H, 5, j + 4),
    ]
}

/// The 26 size-10 codes of the soccer ball graph grouped by motif class,
/// as node sets over the canonical ids of [`crate::graph::build_sbg`].
///
/// The B subclasses are the images of the A subclasses under
/// [`SbgLabel::mirror`].
pub fn motif_class_sets() -> Vec<MotifSet> {
    let mut out = vec![MotifSet {
        class: MotifClass::I,
        shift: 1,
        code: labels_to_code(
            (1..=5)
                .map(|j| SbgLabel::ring(Patch::H, 2, j))
                .chain((1..=5).map(|j| SbgLabel::ring(Patch::H, 5, j))),
        ),
    }];
    let mirrored = |labels: Vec<SbgLabel>| labels.into_iter().map(SbgLabel::mirror);
    for j in 1..=5 {
        let shift = j as u8;
        out.push(MotifSet {
            class: MotifClass::IIA,
            shift,
            code: labels_to_code(class_two_a(j)),
        });
        out.push(MotifSet {
            class: MotifClass::IIB,
            shift,
            code: labels_to_code(mirrored(class_two_a(j))),
        });
        out.push(MotifSet {
            class: MotifClass::IIIA,
            shift,
            code: labels_to_code(class_three_a(j)),
        });
        out.push(MotifSet {
            class: MotifClass::IIIB,
            shift,
            code: labels_to_code(mirrored(class_three_a(j))),
        });
        out.push(MotifSet {
            class: MotifClass::IV,
            shift,
            code: labels_to_code(class_four(j)),
        });
    }
    out.sort_by_key(|m| (m.class, m.shift));
    out
}
