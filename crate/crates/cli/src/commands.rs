use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};
use vminor_core::dow::alternance_graph;
use vminor_core::euler::find_euler_tour;
use vminor_core::graph::{find_isomorphism, MultiGraph, SimpleGraph, VertexId};
use vminor_core::io::{
    bundle_chain, parse_multigraph, parse_simple_graph, parse_tour_or_word, parse_vertex_set, parse_witness,
    parse_word, serialize_multi, serialize_simple, serialize_tour, serialize_vertex_set, serialize_witness,
    InstanceBundle, Payload,
};
use vminor_core::lc::LcOrbit;
use vminor_core::reduction::{build_soet_from_ham, extract_ham_from_soet, k3_expand, CubicGraph, HamCycle};
use vminor_core::soet::{is_soet, SoetCertificate};
use vminor_core::solvers::{
    hamiltonian_decide, iso_soet_decide, iso_vm_decide, star_vm_decide, verify_vm_witness, Decision, VmWitness,
};
use vminor_core::Error;

use crate::{exit, Command, GlobalOpts};

/// What a command prints and the status it exits with.
pub(crate) struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

/// A one-line diagnostic and its exit status.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        let code = if e.kind() == io::ErrorKind::NotFound {
            exit::NO_INPUT
        } else {
            exit::IO
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => exit::UNKNOWN,
            Error::Soundness(_) => exit::SOFTWARE,
            _ => exit::DATA,
        };
        Failure::new(code, e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn in_file<T>(path: &Path, r: vminor_core::Result<T>) -> Res<T> {
    r.map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{}: {}", path.display(), f.message))
    })
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn read_simple(path: &Path) -> Res<SimpleGraph> {
    in_file(path, parse_simple_graph(&read(path)?))
}

fn read_multi(path: &Path) -> Res<Arc<MultiGraph>> {
    in_file(path, parse_multigraph(&read(path)?)).map(Arc::new)
}

fn read_cubic(path: &Path) -> Res<CubicGraph> {
    in_file(path, CubicGraph::new(read_simple(path)?))
}

/// Files to write under `--out`, created in order.
struct Emit {
    dir: Option<PathBuf>,
    files: Vec<(String, String)>,
}

impl Emit {
    fn new(dir: &Option<PathBuf>) -> Self {
        Emit {
            dir: dir.clone(),
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body));
    }

    fn write(self) -> Res<Vec<String>> {
        let Some(dir) = self.dir else { return Ok(Vec::new()) };
        fs::create_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
        let mut names = Vec::new();
        for (name, body) in self.files {
            let path = dir.join(&name);
            fs::write(&path, body).map_err(|e| Failure::io(&path, e))?;
            names.push(name);
        }
        Ok(names)
    }
}

fn answer_code<W>(d: &Decision<W>) -> i32 {
    match d {
        Decision::Yes(_) => exit::YES,
        Decision::No => exit::NO,
        Decision::Unknown(_) => exit::UNKNOWN,
    }
}

/// First text line for a decision.
fn headline<W>(d: &Decision<W>) -> String {
    match d {
        Decision::Unknown(r) => format!("UNKNOWN {r}\n"),
        other => format!("{}\n", other.label()),
    }
}

fn decision_json<W>(command: &str, d: &Decision<W>, extra: Value) -> Value {
    let mut v = json!({ "command": command, "answer": d.label() });
    if let Decision::Unknown(r) = d {
        v["reason"] = json!(r.reason);
        v["budget"] = json!(r.budget);
    }
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
        dst.extend(src);
    }
    v
}

fn cycle_text(c: &HamCycle) -> String {
    let names: Vec<&str> = c.order().iter().map(|v| v.as_str()).collect();
    format!("{}\n", names.join(" "))
}

/// `# subset:` line followed by the tour.
fn certificate_text(cert: &SoetCertificate) -> String {
    format!("# subset: {}\n{}", serialize_vertex_set(cert.subset()), serialize_tour(cert.tour()))
}

/// The star witness re-targeted at an isomorphic star with other labels.
fn retarget(witness: &VmWitness, from: &SimpleGraph, to: &SimpleGraph) -> Res<VmWitness> {
    let map = find_isomorphism(from, to)
        .ok_or_else(|| Failure::new(exit::SOFTWARE, "star targets are not isomorphic"))?;
    Ok(VmWitness {
        ops: witness.ops.clone(),
        iso: witness.iso.iter().map(|(a, b)| (a.clone(), map[b].clone())).collect(),
    })
}

fn subset_comment(text: &str) -> Option<&str> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix("subset:"))
}

pub(crate) fn dispatch(command: &Command, opts: &GlobalOpts) -> Res<Outcome> {
    let config = opts.config();
    match command {
        Command::Expand { graph } => {
            let r = read_cubic(graph)?;
            let exp = k3_expand(&r);
            let text = serialize_multi(&exp.graph);
            let json = json!({ "command": "expand", "graph": text, "k": 2 * r.graph().len() });
            Ok(Outcome { code: exit::YES, text, json })
        }
        Command::Euler { graph } => {
            let f = read_multi(graph)?;
            let tour = in_file(graph, find_euler_tour(&f))?.canonical_form();
            let mut text = serialize_tour(&tour);
            let mut json = json!({ "command": "euler", "tour": text });
            if f.is_regular(4) {
                let word = in_file(graph, tour.induced_word())?;
                let names: Vec<&str> = word.letters().iter().map(|v| v.as_str()).collect();
                let _ = writeln!(text, "# word: {}", names.join(" "));
                json["word"] = json!(names.join(" "));
            }
            Ok(Outcome { code: exit::YES, text, json })
        }
        Command::Alternance { word } => {
            let w = in_file(word, parse_word(&read(word)?))?;
            let text = serialize_simple(&alternance_graph(&w));
            let json = json!({ "command": "alternance", "graph": text });
            Ok(Outcome { code: exit::YES, text, json })
        }
        Command::SoetSolve { graph, k, out } => {
            let f = read_multi(graph)?;
            let d = iso_soet_decide(&f, *k, &config)?;
            let mut text = headline(&d);
            let mut emit = Emit::new(out);
            let mut extra = json!({});
            if let Decision::Yes(cert) = &d {
                let body = certificate_text(cert);
                let order: Vec<&str> = cert.order().iter().map(|v| v.as_str()).collect();
                let _ = writeln!(text, "# order: {}", order.join(" "));
                text.push_str(&body);
                extra = json!({ "subset": serialize_vertex_set(cert.subset()), "order": order, "tour": serialize_tour(cert.tour()) });
                emit.add("tour.txt", body);
            }
            emit.write()?;
            let json = decision_json("soet-solve", &d, extra);
            Ok(Outcome { code: answer_code(&d), text, json })
        }
        Command::SoetVerify { graph, tour, subset } => {
            let f = read_multi(graph)?;
            let body = read(tour)?;
            let t = in_file(tour, parse_tour_or_word(&f, &body))?;
            let subset_text = match subset {
                Some(s) => s.as_str(),
                None => subset_comment(&body).ok_or_else(|| {
                    Failure::new(exit::USAGE, "no vertex set given and the tour file has no '# subset:' line")
                })?,
            };
            let set: BTreeSet<VertexId> = parse_vertex_set(subset_text)?;
            let d = match is_soet(&t, &set)? {
                Some(order) => Decision::Yes(order),
                None => Decision::No,
            };
            let mut text = headline(&d);
            let mut extra = json!({ "subset": serialize_vertex_set(&set) });
            if let Decision::Yes(order) = &d {
                let names: Vec<&str> = order.iter().map(|v| v.as_str()).collect();
                let _ = writeln!(text, "order {}", names.join(" "));
                extra["order"] = json!(names);
            }
            let json = decision_json("soet-verify", &d, extra);
            Ok(Outcome { code: answer_code(&d), text, json })
        }
        Command::VmSolve { graph, target, out } => {
            let g = read_simple(graph)?;
            let h = read_simple(target)?;
            let d = iso_vm_decide(&g, &h, &config)?;
            let mut text = headline(&d);
            let mut emit = Emit::new(out);
            let mut extra = json!({});
            if let Decision::Yes(w) = &d {
                let body = serialize_witness(w);
                text.push_str(&body);
                extra = json!({ "witness": body });
                emit.add("witness.txt", body);
            }
            emit.write()?;
            let json = decision_json("vm-solve", &d, extra);
            Ok(Outcome { code: answer_code(&d), text, json })
        }
        Command::VmSolveStar { graph, k, out } => {
            let g = read_simple(graph)?;
            let d = star_vm_decide(&g, *k, &config)?;
            let mut text = headline(&d);
            let mut emit = Emit::new(out);
            let mut extra = json!({});
            if let Decision::Yes(cert) = &d {
                let target = serialize_simple(&cert.target);
                let witness = serialize_witness(&cert.witness);
                let _ = write!(text, "# target\n{target}# witness\n{witness}");
                extra = json!({ "subset": serialize_vertex_set(&cert.subset), "target": target, "witness": witness });
                emit.add("target.txt", target);
                emit.add("witness.txt", witness);
            }
            emit.write()?;
            let json = decision_json("vm-solve-star", &d, extra);
            Ok(Outcome { code: answer_code(&d), text, json })
        }
        Command::VmVerify { graph, target, witness } => {
            let g = read_simple(graph)?;
            let h = read_simple(target)?;
            let w = in_file(witness, parse_witness(&read(witness)?))?;
            let ok = in_file(witness, verify_vm_witness(&g, &h, &w))?;
            verdict("vm-verify", ok)
        }
        Command::Ham { graph, out } => {
            let r = read_cubic(graph)?;
            let d = hamiltonian_decide(&r, &config);
            let mut text = headline(&d);
            let mut emit = Emit::new(out);
            let mut extra = json!({});
            if let Decision::Yes(c) = &d {
                let body = cycle_text(c);
                text.push_str(&body);
                extra = json!({ "cycle": c.order().iter().map(|v| v.as_str()).collect::<Vec<_>>() });
                emit.add("cycle.txt", body);
            }
            emit.write()?;
            let json = decision_json("ham", &d, extra);
            Ok(Outcome { code: answer_code(&d), text, json })
        }
        Command::HamVerify { graph, cycle } => {
            let r = read_cubic(graph)?;
            let body = read(cycle)?;
            let order = body
                .split_whitespace()
                .map(VertexId::new)
                .collect::<vminor_core::Result<Vec<_>>>();
            let order = in_file(cycle, order)?;
            verdict("ham-verify", HamCycle::new(&r, order).is_ok())
        }
        Command::Pipeline { graph, out } => pipeline(graph, out, opts),
        Command::Orbit { graph } => {
            let g = read_simple(graph)?;
            let orbit = LcOrbit::explore(&g, opts.limit)?;
            let members: BTreeSet<SimpleGraph> = orbit.graphs().collect();
            let mut text = format!("size {}\n", members.len());
            let mut list = Vec::new();
            for (i, m) in members.iter().enumerate() {
                let body = serialize_simple(m);
                let _ = write!(text, "# member {i}\n{body}");
                list.push(body);
            }
            let json = json!({ "command": "orbit", "size": members.len(), "members": list });
            Ok(Outcome { code: exit::YES, text, json })
        }
    }
}

fn verdict(command: &str, ok: bool) -> Res<Outcome> {
    let label = if ok { "VALID" } else { "INVALID" };
    Ok(Outcome {
        code: if ok { exit::YES } else { exit::NO },
        text: format!("{label}\n"),
        json: json!({ "command": command, "valid": ok }),
    })
}

/// Builds the bundle chain, replays it, decides Hamiltonicity and, on YES,
/// carries the cycle through every instance as a checked certificate.
fn pipeline(graph: &Path, out: &Option<PathBuf>, opts: &GlobalOpts) -> Res<Outcome> {
    let config = opts.config();
    let r = read_cubic(graph)?;
    let chain = bundle_chain(r.clone())?;
    let names = ["1-cubham.bundle", "2-isosoet.bundle", "3-starvm.bundle", "4-isovm.bundle"];
    let mut emit = Emit::new(out);
    let mut log = String::new();
    let mut checks = Vec::new();
    emit.add("cubic.txt", serialize_simple(r.graph()));
    for (name, b) in names.iter().zip(&chain) {
        emit.add(name, b.serialize());
        let _ = writeln!(log, "{} {}", b.kind(), b.payload.digest());
    }
    for (i, w) in chain.windows(2).enumerate() {
        let reparsed = InstanceBundle::parse(&w[1].serialize())?;
        reparsed.replay_from(&w[0])?;
        checks.push(format!("replay {}", names[i + 1]));
    }
    let (Payload::IsoSoet { graph: f, k }, Payload::StarVm { graph: circle, .. }, Payload::IsoVm { graph: g, target: h }) =
        (&chain[1].payload, &chain[2].payload, &chain[3].payload)
    else {
        return Err(Failure::new(exit::SOFTWARE, "bundle chain has unexpected kinds"));
    };
    emit.add("isosoet-graph.txt", serialize_multi(f));
    emit.add("starvm-graph.txt", serialize_simple(circle));
    emit.add("isovm-graph.txt", serialize_simple(g));
    emit.add("isovm-target.txt", serialize_simple(h));

    let expected = hamiltonian_decide(&r, &config);
    emit.add("expected.txt", headline(&expected));
    if let Decision::Yes(cycle) = &expected {
        emit.add("cycle.txt", cycle_text(cycle));
        checks.push("hamiltonian cycle".into());

        let exp = k3_expand(&r);
        let cert = build_soet_from_ham(&r, &exp, cycle)?;
        if is_soet(cert.tour(), cert.subset())?.is_none() || cert.subset().len() != *k {
            return Err(Failure::new(exit::SOFTWARE, "constructed tour is not a certificate"));
        }
        let back = extract_ham_from_soet(&r, &exp, &cert)?;
        emit.add("soet-tour.txt", certificate_text(&cert));
        checks.push(format!("semi-ordered tour on {k} vertices"));
        checks.push(format!("cycle recovered from tour: {}", cycle_text(&back).trim_end()));

        let star = star_vm_decide(circle, *k, &config)?;
        match &star {
            Decision::Yes(c) => {
                if !verify_vm_witness(circle, &c.target, &c.witness)? {
                    return Err(Failure::new(exit::SOFTWARE, "star witness does not verify"));
                }
                let lifted = retarget(&c.witness, &c.target, h)?;
                if !verify_vm_witness(g, h, &lifted)? {
                    return Err(Failure::new(exit::SOFTWARE, "vertex-minor witness does not verify"));
                }
                emit.add("starvm-target.txt", serialize_simple(&c.target));
                emit.add("starvm-witness.txt", serialize_witness(&c.witness));
                emit.add("isovm-witness.txt", serialize_witness(&lifted));
                checks.push(format!("star vertex-minor on {k} vertices"));
                checks.push("vertex-minor witness".into());
            }
            Decision::No => {
                return Err(Failure::new(
                    exit::SOFTWARE,
                    "Hamiltonian graph but the circle-graph instance has no star vertex-minor",
                ));
            }
            Decision::Unknown(rep) => checks.push(format!("star vertex-minor search inconclusive: {rep}")),
        }
    }
    let written = emit.write()?;

    let mut text = format!("expected {}", headline(&expected));
    text.push_str(&log);
    for c in &checks {
        let _ = writeln!(text, "checked {c}");
    }
    let json = decision_json(
        "pipeline",
        &expected,
        json!({
            "digests": chain.iter().map(|b| json!({ "kind": b.kind().to_string(), "digest": b.payload.digest() })).collect::<Vec<_>>(),
            "checked": checks,
            "files": written,
        }),
    );
    Ok(Outcome {
        code: answer_code(&expected),
        text,
        json,
    })
}
