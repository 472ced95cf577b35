//! Instance bundles: a reduction-chain instance plus the steps that produced
//! it, with a digest of the upstream payload so the chain can be replayed.
//!
//! ```text
//! bundle starvm
//! @step source kind=isosoet digest=<sha256 of upstream payload>
//! @step euler-tour start=a^(b) edges=0,2,…
//! @step alternance k=8
//! @payload
//! @graph
//! simple 12
//! …
//! @k 8
//! @end
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::format::{parse_multigraph, parse_simple_graph, serialize_multi, serialize_simple};
use crate::dow::alternance_graph;
use crate::error::{Error, Result};
use crate::euler::EulerianTour;
use crate::graph::{MultiGraph, SimpleGraph, VertexId};
use crate::reduction::{reduce_cubham_to_isosoet, reduce_isosoet_to_starvm, reduce_starvm_to_isovm, CubicGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleKind {
    Cubham,
    IsoSoet,
    StarVm,
    IsoVm,
}

impl BundleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BundleKind::Cubham => "cubham",
            BundleKind::IsoSoet => "isosoet",
            BundleKind::StarVm => "starvm",
            BundleKind::IsoVm => "isovm",
        }
    }
}

impl fmt::Display for BundleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BundleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cubham" => BundleKind::Cubham,
            "isosoet" => BundleKind::IsoSoet,
            "starvm" => BundleKind::StarVm,
            "isovm" => BundleKind::IsoVm,
            other => return Err(Error::Precondition(format!("unknown bundle kind {other:?}"))),
        })
    }
}

/// The instance carried by a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Cubham { graph: CubicGraph },
    IsoSoet { graph: Arc<MultiGraph>, k: usize },
    StarVm { graph: SimpleGraph, k: usize },
    IsoVm { graph: SimpleGraph, target: SimpleGraph },
}

impl Payload {
    pub fn kind(&self) -> BundleKind {
        match self {
            Payload::Cubham { .. } => BundleKind::Cubham,
            Payload::IsoSoet { .. } => BundleKind::IsoSoet,
            Payload::StarVm { .. } => BundleKind::StarVm,
            Payload::IsoVm { .. } => BundleKind::IsoVm,
        }
    }

    pub fn serialize(&self) -> String {
        let mut s = String::from("@graph\n");
        match self {
            Payload::Cubham { graph } => s.push_str(&serialize_simple(graph.graph())),
            Payload::IsoSoet { graph, k } => {
                s.push_str(&serialize_multi(graph));
                let _ = writeln!(s, "@k {k}");
            }
            Payload::StarVm { graph, k } => {
                s.push_str(&serialize_simple(graph));
                let _ = writeln!(s, "@k {k}");
            }
            Payload::IsoVm { graph, target } => {
                s.push_str(&serialize_simple(graph));
                s.push_str("@target\n");
                s.push_str(&serialize_simple(target));
            }
        }
        s
    }

    /// Lowercase hex SHA-256 of [`serialize`](Self::serialize).
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.serialize().as_bytes()))
    }

    fn parse(kind: BundleKind, lines: &[(usize, &str)]) -> Result<Self> {
        let mut sections: Vec<(usize, &str, String)> = Vec::new();
        for &(lineno, line) in lines {
            if let Some(rest) = line.strip_prefix('@') {
                sections.push((lineno, rest, String::new()));
            } else {
                let (_, _, body) = sections
                    .last_mut()
                    .ok_or_else(|| bad(lineno, "payload must start with a section marker"))?;
                body.push_str(line);
                body.push('\n');
            }
        }
        let find = |name: &str| sections.iter().find(|(_, head, _)| head.split_whitespace().next() == Some(name));
        let graph_text = find("graph").map(|(_, _, b)| b.as_str()).ok_or_else(|| bad(0, "missing @graph"))?;
        let k = || -> Result<usize> {
            let (lineno, head, _) = find("k").ok_or_else(|| bad(0, "missing @k"))?;
            head.split_whitespace()
                .nth(1)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(*lineno, "@k needs a number"))
        };
        Ok(match kind {
            BundleKind::Cubham => Payload::Cubham {
                graph: CubicGraph::new(parse_simple_graph(graph_text)?)?,
            },
            BundleKind::IsoSoet => Payload::IsoSoet {
                graph: Arc::new(parse_multigraph(graph_text)?),
                k: k()?,
            },
            BundleKind::StarVm => Payload::StarVm {
                graph: parse_simple_graph(graph_text)?,
                k: k()?,
            },
            BundleKind::IsoVm => Payload::IsoVm {
                graph: parse_simple_graph(graph_text)?,
                target: parse_simple_graph(
                    find("target").map(|(_, _, b)| b.as_str()).ok_or_else(|| bad(0, "missing @target"))?,
                )?,
            },
        })
    }
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::InvalidInput {
        line,
        message: message.into(),
    }
}

/// One reduction step and its parameters, in the order written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenanceStep {
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl ProvenanceStep {
    fn new(name: &str, params: &[(&str, String)]) -> Self {
        ProvenanceStep {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        }
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBundle {
    pub payload: Payload,
    pub provenance: Vec<ProvenanceStep>,
}

impl InstanceBundle {
    /// The head of a chain: a cubic graph with no provenance.
    pub fn from_cubic(r: CubicGraph) -> Self {
        InstanceBundle {
            payload: Payload::Cubham { graph: r },
            provenance: Vec::new(),
        }
    }

    pub fn kind(&self) -> BundleKind {
        self.payload.kind()
    }

    /// The next instance in the chain cubham → isosoet → starvm → isovm.
    pub fn derive(&self) -> Result<InstanceBundle> {
        let source = ProvenanceStep::new(
            "source",
            &[("kind", self.kind().to_string()), ("digest", self.payload.digest())],
        );
        let (payload, steps) = match &self.payload {
            Payload::Cubham { graph } => {
                let (exp, k) = reduce_cubham_to_isosoet(graph);
                (
                    Payload::IsoSoet { graph: exp.graph, k },
                    vec![ProvenanceStep::new("k3-expand", &[("k", k.to_string())])],
                )
            }
            Payload::IsoSoet { graph, k } => {
                let inst = reduce_isosoet_to_starvm(graph, *k)?;
                let steps = vec![tour_step(&inst.tour), ProvenanceStep::new("alternance", &[("k", k.to_string())])];
                (Payload::StarVm { graph: inst.graph, k: *k }, steps)
            }
            Payload::StarVm { graph, k } => {
                let (g, h) = reduce_starvm_to_isovm(graph, *k)?;
                (
                    Payload::IsoVm { graph: g, target: h },
                    vec![ProvenanceStep::new("fresh-star", &[("k", k.to_string())])],
                )
            }
            Payload::IsoVm { .. } => {
                return Err(Error::Precondition("isovm is the last instance in the chain".into()));
            }
        };
        let mut provenance = vec![source];
        provenance.extend(steps);
        Ok(InstanceBundle { payload, provenance })
    }

    /// Re-runs the recorded steps on `upstream` and checks the result is
    /// byte-identical to this bundle's payload.
    ///
    /// The recorded tour is replayed as given, so a bundle built from a
    /// different (valid) tour still replays.
    pub fn replay_from(&self, upstream: &InstanceBundle) -> Result<()> {
        let fail = |step: usize, message: String| Err(Error::Validation { step, message });
        let Some(source) = self.provenance.first().filter(|s| s.name == "source") else {
            return fail(0, "bundle has no source step".into());
        };
        if source.param("kind") != Some(upstream.kind().as_str()) {
            return fail(0, format!("source kind {:?} does not match upstream {}", source.param("kind"), upstream.kind()));
        }
        let digest = upstream.payload.digest();
        if source.param("digest") != Some(digest.as_str()) {
            return fail(0, "upstream digest mismatch".into());
        }
        let rebuilt = match (&upstream.payload, self.kind()) {
            (Payload::IsoSoet { graph, k }, BundleKind::StarVm) => {
                let Some(step) = self.provenance.iter().position(|s| s.name == "euler-tour") else {
                    return fail(1, "missing euler-tour step".into());
                };
                let tour = match parse_tour_step(graph, &self.provenance[step]) {
                    Ok(t) => t,
                    Err(e) => return fail(step, e.to_string()),
                };
                InstanceBundle {
                    payload: Payload::StarVm {
                        graph: alternance_graph(&tour.induced_word()?),
                        k: *k,
                    },
                    provenance: vec![
                        source.clone(),
                        tour_step(&tour),
                        ProvenanceStep::new("alternance", &[("k", k.to_string())]),
                    ],
                }
            }
            _ => upstream.derive()?,
        };
        if rebuilt.kind() != self.kind() {
            return fail(0, format!("upstream {} does not lead to {}", upstream.kind(), self.kind()));
        }
        if rebuilt.payload.serialize() != self.payload.serialize() {
            return fail(self.provenance.len(), "replayed payload differs".into());
        }
        if rebuilt.provenance != self.provenance {
            return fail(self.provenance.len(), "replayed provenance differs".into());
        }
        Ok(())
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("bundle {}\n", self.kind());
        for step in &self.provenance {
            s.push_str("@step ");
            s.push_str(&step.name);
            for (k, v) in &step.params {
                let _ = write!(s, " {k}={v}");
            }
            s.push('\n');
        }
        s.push_str("@payload\n");
        s.push_str(&self.payload.serialize());
        s.push_str("@end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = super::format::content_lines(text).collect();
        let (&(l0, head), rest) = lines.split_first().ok_or_else(|| bad(1, "empty bundle"))?;
        let kind: BundleKind = head
            .strip_prefix("bundle ")
            .ok_or_else(|| bad(l0, "expected 'bundle <kind>'"))?
            .trim()
            .parse()
            .map_err(|e: Error| bad(l0, e.to_string()))?;
        let mut provenance = Vec::new();
        let mut i = 0;
        while i < rest.len() {
            let (lineno, line) = rest[i];
            i += 1;
            if line == "@payload" {
                break;
            }
            let body = line.strip_prefix("@step ").ok_or_else(|| bad(lineno, "expected '@step' or '@payload'"))?;
            let mut toks = body.split_whitespace();
            let name = toks.next().ok_or_else(|| bad(lineno, "step needs a name"))?.to_string();
            let params = toks
                .map(|t| {
                    t.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| bad(lineno, format!("expected key=value, found {t:?}")))
                })
                .collect::<Result<_>>()?;
            provenance.push(ProvenanceStep { name, params });
        }
        let end = rest[i..]
            .iter()
            .position(|&(_, l)| l == "@end")
            .ok_or_else(|| bad(text.lines().count(), "missing @end"))?;
        let payload = Payload::parse(kind, &rest[i..i + end])?;
        Ok(InstanceBundle { payload, provenance })
    }
}

fn tour_step(t: &EulerianTour) -> ProvenanceStep {
    let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
    let start = t.vertices().first().map(|v| v.to_string()).unwrap_or_default();
    ProvenanceStep::new("euler-tour", &[("start", start), ("edges", edges.join(","))])
}

fn parse_tour_step(f: &Arc<MultiGraph>, step: &ProvenanceStep) -> Result<EulerianTour> {
    let start = VertexId::new(step.param("start").unwrap_or(""))?;
    let edges: Vec<usize> = step
        .param("edges")
        .unwrap_or("")
        .split(',')
        .map(|t| t.parse().map_err(|_| Error::Precondition(format!("bad edge id {t:?}"))))
        .collect::<Result<_>>()?;
    let mut vertices = vec![start];
    for &e in &edges[..edges.len().saturating_sub(1)] {
        if e >= f.edge_count() {
            return Err(Error::Precondition(format!("edge id {e} out of range")));
        }
        let cur = f.require(vertices.last().expect("non-empty"))?;
        vertices.push(f.label(f.other(e, cur)).clone());
    }
    EulerianTour::new(Arc::clone(f), &vertices, edges)
}

/// The four bundles of the chain starting at `r`.
pub fn bundle_chain(r: CubicGraph) -> Result<Vec<InstanceBundle>> {
    let mut chain = vec![InstanceBundle::from_cubic(r)];
    for _ in 0..3 {
        let next = chain.last().expect("non-empty").derive()?;
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn chain() -> Vec<InstanceBundle> {
        bundle_chain(CubicGraph::new(families::k4()).unwrap()).unwrap()
    }

    #[test]
    fn chain_kinds_and_sizes() {
        let c = chain();
        let kinds: Vec<_> = c.iter().map(|b| b.kind()).collect();
        assert_eq!(kinds, [BundleKind::Cubham, BundleKind::IsoSoet, BundleKind::StarVm, BundleKind::IsoVm]);
        match &c[1].payload {
            Payload::IsoSoet { graph, k } => assert_eq!((graph.len(), *k), (12, 8)),
            other => panic!("{other:?}"),
        }
        match &c[3].payload {
            Payload::IsoVm { target, .. } => assert_eq!(target.len(), 8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bundles_round_trip_and_replay() {
        let c = chain();
        for b in &c {
            let text = b.serialize();
            let back = InstanceBundle::parse(&text).unwrap();
            assert_eq!(back.serialize(), text);
            assert_eq!(&back, b);
        }
        for w in c.windows(2) {
            w[1].replay_from(&w[0]).unwrap();
        }
    }

    #[test]
    fn tampering_is_detected() {
        let c = chain();
        let text = c[2].serialize().replacen("@k 8", "@k 7", 1);
        let tampered = InstanceBundle::parse(&text).unwrap();
        assert!(matches!(tampered.replay_from(&c[1]), Err(Error::Validation { .. })));
        // wrong upstream
        assert!(c[2].replay_from(&c[0]).is_err());
        let mut other = c[1].clone();
        if let Payload::IsoSoet { k, .. } = &mut other.payload {
            *k = 4;
        }
        assert!(c[2].replay_from(&other).is_err());
    }
}
