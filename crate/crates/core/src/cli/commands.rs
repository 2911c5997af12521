use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use super::{
    bench, node_budget, BoundsArgs, CliError, ColourCommand, ColourOutput, Command, ExactCommand, GenerateArgs,
    InputArgs, Outcome, SquareArgs, ValidateCommand, VertexAlgo,
};
use crate::colouring::{colour_count, Colour, ListAssignment, ListTarget};
use crate::cyclic::colour_square_via_classes;
use crate::edge::{colour_edges_even_k, colour_edges_odd_k, even_k_colours, odd_k_colours};
use crate::embedding::faces;
use crate::error::ColouringError;
use crate::exact::{
    exact_frugal_chromatic, exact_frugal_chromatic_index, exact_lambda, exact_rainbow_face_chromatic, ExactResult,
};
use crate::generators::{
    fat_triangle, named_graph, planar_tight, random_bipartite_multigraph, random_lists, random_maximal_outerplanar,
    random_multigraph,
};
use crate::graph::{girth, square, Girth, MultiGraph, Vertex};
use crate::io::{emit_graph_json, read_graph_file, Loaded, ParseError};
use crate::outerplanar::{
    colour_outerplanar, colour_outerplanar_2connected, outerplanar_2connected_list_size, outerplanar_list_size,
};
use crate::planar::{
    bound_value, colour_planar_frugal_with, greedy_L_k1, label_to_frugal, planar_list_size, BoundFamily, ListPolicy,
};
use crate::validate::{
    validate_face_rainbow, validate_frugal_edge, validate_frugal_vertex, validate_lists, validate_lpq, validate_proper,
    Verdict, Violation,
};

pub(super) fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<Option<Outcome>, CliError> {
    match command {
        Command::Generate(args) => generate(args, stdout),
        Command::Validate { check } => validate(check).map(Some),
        Command::Colour { target } => colour(target).map(Some),
        Command::Exact { problem } => exact(problem).map(Some),
        Command::SquareViaCyclic(args) => square_via_cyclic(args).map(Some),
        Command::Bounds(args) => bounds(args).map(Some),
        Command::Bench(args) => bench::run(args).map(Some),
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn item_name(g: &MultiGraph, target: ListTarget, i: usize) -> &str {
    match target {
        ListTarget::Vertices => g.vertex_name(i),
        ListTarget::Edges => g.edge_name(i),
    }
}

pub(super) fn named(g: &MultiGraph, target: ListTarget, c: &[Colour]) -> Value {
    let map: BTreeMap<&str, Colour> = c.iter().enumerate().map(|(i, &x)| (item_name(g, target, i), x)).collect();
    json!(map)
}

fn violation_json(g: &MultiGraph, v: &Violation) -> Value {
    json!({
        "kind": v.kind,
        "vertices": v.vertices.iter().map(|&x| g.vertex_name(x)).collect::<Vec<_>>(),
        "edges": v.edges.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
        "colours": v.colours,
    })
}

/// `(outcome fields, exit code)` for a validator verdict.
fn verdict_json(g: &MultiGraph, verdict: &Verdict) -> (Value, i32) {
    match verdict {
        Ok(()) => (json!({ "valid": true }), 0),
        Err(v) => (json!({ "valid": false, "violation": violation_json(g, v) }), 1),
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut base, extra) {
        a.extend(b);
    }
    base
}

fn generate(a: GenerateArgs, stdout: &mut dyn Write) -> Result<Option<Outcome>, CliError> {
    let family = a.family.as_str();
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| usage(format!("{family} needs --{flag}")));
    let seed = || a.seed.ok_or_else(|| usage(format!("{family} needs --seed")));
    let inst = match family {
        "planar-tight" => planar_tight(need(a.m, "m")?)?,
        "fat-triangle" => fat_triangle(need(a.m, "m")?)?,
        "maximal-outerplanar" => random_maximal_outerplanar(need(a.n, "n")?, seed()?)?,
        "random-multigraph" => {
            random_multigraph(need(a.n, "n")?, need(a.max_degree, "max-degree")?, a.max_multiplicity, seed()?)?
        }
        "random-bipartite" => random_bipartite_multigraph(
            need(a.left, "left")?,
            need(a.right, "right")?,
            need(a.max_degree, "max-degree")?,
            a.max_multiplicity,
            seed()?,
        )?,
        name => named_graph(name, a.n)?,
    };
    let lists = match a.list_size {
        None => None,
        Some(size) => {
            let palette = a.palette.unwrap_or(2 * size);
            if palette < size {
                return Err(usage("--palette must be at least --list-size"));
            }
            let (target, items) = if a.edge_lists {
                (ListTarget::Edges, inst.graph.edge_count())
            } else {
                (ListTarget::Vertices, inst.graph.vertex_count())
            };
            let lists = random_lists(items, size, palette, seed()?);
            Some(ListAssignment::new(target, lists.into_iter().map(BTreeSet::from_iter).collect()))
        }
    };
    let loaded = Loaded { graph: inst.graph, rotation: inst.rotation, lists, colouring: None };
    let text = emit_graph_json(&loaded);
    let Some(path) = a.output else {
        let _ = writeln!(stdout, "{text}");
        return Ok(None);
    };
    write_file(&path, &text)?;
    let g = &loaded.graph;
    let mut out = Outcome::new(
        json!({ "family": inst.family, "params": inst.params }),
        json!({
            "output": path.display().to_string(),
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
            "rotation": loaded.rotation.is_some(),
        }),
    );
    out.seed = a.seed;
    Ok(Some(out))
}

/// The graph file and the colouring to check, which must colour `target`.
fn with_colouring(input: &InputArgs, target: ListTarget) -> Result<(Loaded, Vec<Colour>), CliError> {
    let loaded = read_graph_file(&input.file)?;
    let source = match &input.colouring {
        Some(path) => read_graph_file(path)?.colouring,
        None => loaded.colouring.clone(),
    };
    let (found, c) = source.ok_or_else(|| usage("no colouring given"))?;
    let expected = match target {
        ListTarget::Vertices => loaded.graph.vertex_count(),
        ListTarget::Edges => loaded.graph.edge_count(),
    };
    if found != target || c.len() != expected {
        return Err(usage(format!("colouring must assign a colour to all {expected} {target:?}").to_lowercase()));
    }
    Ok((loaded, c))
}

fn check_with_lists(verdict: Verdict, c: &[Colour], lists: Option<&ListAssignment>, target: ListTarget) -> Verdict {
    verdict?;
    match lists {
        Some(l) if l.target == target => validate_lists(c, l),
        _ => Ok(()),
    }
}

fn validate(check: ValidateCommand) -> Result<Outcome, CliError> {
    let (input, parameters, target) = match &check {
        ValidateCommand::Vertex { input, k } => (input, json!({ "check": "vertex", "k": k }), ListTarget::Vertices),
        ValidateCommand::Edge { input, k } => (input, json!({ "check": "edge", "k": k }), ListTarget::Edges),
        ValidateCommand::Lpq { input, p, q } => (input, json!({ "check": "lpq", "p": p, "q": q }), ListTarget::Vertices),
        ValidateCommand::Faces { input } => (input, json!({ "check": "faces" }), ListTarget::Vertices),
    };
    let parameters = merge(parameters, json!({ "file": input.file.display().to_string() }));
    let (loaded, c) = with_colouring(input, target)?;
    let g = &loaded.graph;
    let lists = loaded.lists.as_ref();
    let mut extra = json!({ "colours_used": colour_count(&c) });
    let verdict = match &check {
        ValidateCommand::Vertex { k, .. } => {
            check_with_lists(validate_frugal_vertex(g, *k, &c), &c, lists, target)
        }
        ValidateCommand::Edge { k, .. } => check_with_lists(validate_frugal_edge(g, *k, &c), &c, lists, target),
        ValidateCommand::Lpq { p, q, .. } => validate_lpq(g, *p, *q, &c).map(|span| {
            extra = merge(extra.clone(), json!({ "span": span }));
        }),
        ValidateCommand::Faces { .. } => {
            let sets = face_sets(&loaded)?;
            validate_face_rainbow(g, &sets, &c)
        }
    };
    let (result, exit) = verdict_json(g, &verdict);
    Ok(Outcome { exit, ..Outcome::new(parameters, merge(result, extra)) })
}

/// Distinct boundary vertices of every face of the stored rotation.
fn face_sets(loaded: &Loaded) -> Result<Vec<Vec<Vertex>>, CliError> {
    let rot = loaded.rotation.as_ref().ok_or_else(|| usage("graph file has no rotation"))?;
    let fs = faces(&loaded.graph, rot).map_err(ParseError::from)?;
    Ok(fs
        .faces
        .iter()
        .map(|f| f.boundary().into_iter().collect::<BTreeSet<_>>().into_iter().collect())
        .collect())
}

fn lists_for(
    loaded: &Loaded,
    from: Option<&Path>,
    target: ListTarget,
    items: usize,
) -> Result<Option<(ListAssignment, &'static str)>, CliError> {
    let (lists, source) = match from {
        Some(path) => (read_graph_file(path)?.lists.ok_or_else(|| usage("lists file has no lists"))?, "file"),
        None => match &loaded.lists {
            Some(l) if l.target == target => (l.clone(), "graph"),
            _ => return Ok(None),
        },
    };
    if lists.target != target || lists.len() != items {
        return Err(ColouringError::ListShape.into());
    }
    Ok(Some((lists, source)))
}

fn colour(target: ColourCommand) -> Result<Outcome, CliError> {
    match target {
        ColourCommand::Vertex { file, algo, k, attempt, out } => colour_vertex(&file, algo, k, attempt, &out),
        ColourCommand::Edge { file, k, out } => colour_edge(&file, k, &out),
    }
}

fn planar_bounds(g: &MultiGraph, k: usize) -> Vec<crate::planar::BoundSpec> {
    let gi = girth(g);
    BoundFamily::ALL.iter().map(|&f| bound_value(f, g.max_degree(), k, Some(gi))).collect()
}

fn colour_vertex(file: &Path, algo: VertexAlgo, k: usize, attempt: bool, out: &ColourOutput) -> Result<Outcome, CliError> {
    if k == 0 {
        return Err(ColouringError::BadFrugality { k, min: 1 }.into());
    }
    let loaded = read_graph_file(file)?;
    let g = &loaded.graph;
    let n = g.vertex_count();
    let delta = g.max_degree();
    let required = match algo {
        VertexAlgo::Planar => planar_list_size(delta, k),
        VertexAlgo::Outerplanar => outerplanar_list_size(delta, k),
        VertexAlgo::Outerplanar2 => outerplanar_2connected_list_size(delta, k),
        VertexAlgo::ViaLambda => 0,
    };
    let parameters = json!({
        "file": file.display().to_string(), "algo": format!("{algo:?}").to_lowercase(), "k": k,
        "attempt": attempt, "max_degree": delta,
    });
    let mut outcome = json!({});
    let mut bounds = Vec::new();
    let (colouring, lists) = if algo == VertexAlgo::ViaLambda {
        let labels = greedy_L_k1(g, k);
        let span = validate_lpq(g, k as u64, 1, &labels).map_err(|_| ColouringError::InvalidColouring { k })?;
        outcome = json!({ "labelling": named(g, ListTarget::Vertices, &labels), "max_label": span,
                          "colour_bound": span.div_euclid(k as Colour) + Colour::from(span % k as Colour != 0) });
        bounds = planar_bounds(g, k);
        (label_to_frugal(&labels, k), None)
    } else {
        let (lists, source) = lists_for(&loaded, out.lists.as_deref(), ListTarget::Vertices, n)?
            .unwrap_or_else(|| (ListAssignment::uniform(ListTarget::Vertices, n, 1, required), "uniform"));
        outcome = merge(outcome, json!({ "lists": source, "list_size_required": required, "list_size": lists.min_size() }));
        let c = match algo {
            VertexAlgo::Planar => {
                bounds = planar_bounds(g, k);
                let policy = if attempt { ListPolicy::Attempt } else { ListPolicy::Require };
                colour_planar_frugal_with(g, k, &lists, policy)?
            }
            VertexAlgo::Outerplanar => colour_outerplanar(g, k, &lists)?,
            _ => colour_outerplanar_2connected(g, k, &lists)?,
        };
        (c, Some(lists))
    };
    let verdict = check_with_lists(validate_frugal_vertex(g, k, &colouring), &colouring, lists.as_ref(), ListTarget::Vertices);
    let (result, exit) = verdict_json(g, &verdict);
    let outcome = merge(
        merge(outcome, result),
        json!({ "colouring": named(g, ListTarget::Vertices, &colouring), "colours_used": colour_count(&colouring) }),
    );
    if let Some(path) = &out.output {
        let saved = Loaded { lists, colouring: Some((ListTarget::Vertices, colouring)), ..loaded.clone() };
        write_file(path, &emit_graph_json(&saved))?;
    }
    Ok(Outcome { exit, bounds, ..Outcome::new(parameters, outcome) })
}

fn colour_edge(file: &Path, k: usize, out: &ColourOutput) -> Result<Outcome, CliError> {
    if k == 0 {
        return Err(ColouringError::BadFrugality { k, min: 1 }.into());
    }
    let loaded = read_graph_file(file)?;
    let g = &loaded.graph;
    let delta = g.max_degree();
    let lists = lists_for(&loaded, out.lists.as_deref(), ListTarget::Edges, g.edge_count())?;
    let (pipeline, bound, colouring) = if k.is_multiple_of(2) {
        ("even", even_k_colours(delta, k), colour_edges_even_k(g, k, lists.as_ref().map(|(l, _)| l))?)
    } else {
        if lists.is_some() {
            return Err(usage("edge lists are only supported for even k"));
        }
        ("odd", odd_k_colours(delta, k), colour_edges_odd_k(g, k)?)
    };
    let lists = lists.map(|(l, _)| l);
    let verdict = check_with_lists(validate_frugal_edge(g, k, &colouring), &colouring, lists.as_ref(), ListTarget::Edges);
    let (result, exit) = verdict_json(g, &verdict);
    let used = colour_count(&colouring);
    let outcome = merge(
        result,
        json!({
            "pipeline": pipeline,
            "colouring": named(g, ListTarget::Edges, &colouring),
            "colours_used": used,
            "bound": bound,
            "within_bound": used <= bound,
            "lists": lists.is_some(),
        }),
    );
    if let Some(path) = &out.output {
        let saved = Loaded { lists, colouring: Some((ListTarget::Edges, colouring)), ..loaded.clone() };
        write_file(path, &emit_graph_json(&saved))?;
    }
    let parameters = json!({ "file": file.display().to_string(), "k": k, "max_degree": delta });
    Ok(Outcome { exit, ..Outcome::new(parameters, outcome) })
}

fn exact_json(g: &MultiGraph, target: ListTarget, r: &ExactResult) -> Value {
    json!({ "value": r.optimum, "witness": named(g, target, &r.witness), "nodes": r.nodes })
}

fn positive(k: usize) -> Result<usize, CliError> {
    if k == 0 {
        Err(ColouringError::BadFrugality { k, min: 1 }.into())
    } else {
        Ok(k)
    }
}

fn exact(problem: ExactCommand) -> Result<Outcome, CliError> {
    let (search, name) = match &problem {
        ExactCommand::ChiK { search, .. } => (search, "chi-k"),
        ExactCommand::ChiKEdge { search, .. } => (search, "chi-k-edge"),
        ExactCommand::Lambda { search, .. } => (search, "lambda"),
        ExactCommand::Rainbow { search } => (search, "rainbow"),
    };
    let budget = node_budget(search.budget)?;
    let loaded = read_graph_file(&search.file)?;
    let g = &loaded.graph;
    let n = g.vertex_count().max(1);
    let mut parameters = json!({ "file": search.file.display().to_string(), "problem": name, "budget": budget });
    let outcome = match &problem {
        ExactCommand::ChiK { k, .. } => {
            let max = search.max.unwrap_or(n);
            parameters = merge(parameters, json!({ "k": k, "max": max }));
            exact_json(g, ListTarget::Vertices, &exact_frugal_chromatic(g, positive(*k)?, max, budget)?)
        }
        ExactCommand::ChiKEdge { k, .. } => {
            let max = search.max.unwrap_or(g.edge_count().max(1));
            parameters = merge(parameters, json!({ "k": k, "max": max }));
            exact_json(g, ListTarget::Edges, &exact_frugal_chromatic_index(g, positive(*k)?, max, budget)?)
        }
        ExactCommand::Lambda { p, q, .. } => {
            // labels 1, 1+p, 1+2p, ... on distinct vertices always fit
            let max = search.max.unwrap_or((*p).max(*q).max(1) * (n - 1) + 1);
            parameters = merge(parameters, json!({ "p": p, "q": q, "max": max }));
            exact_json(g, ListTarget::Vertices, &exact_lambda(g, *p, *q, max, budget)?)
        }
        ExactCommand::Rainbow { .. } => {
            let max = search.max.unwrap_or(n);
            parameters = merge(parameters, json!({ "max": max }));
            let sets = face_sets(&loaded)?;
            exact_json(g, ListTarget::Vertices, &exact_rainbow_face_chromatic(g, &sets, max, budget)?)
        }
    };
    Ok(Outcome::new(parameters, outcome))
}

fn square_via_cyclic(a: SquareArgs) -> Result<Outcome, CliError> {
    let budget = node_budget(a.budget)?;
    let loaded = read_graph_file(&a.file)?;
    let g = &loaded.graph;
    let rot = loaded.rotation.as_ref().ok_or_else(|| usage("graph file has no rotation"))?;
    let (frugal, source) = match &loaded.colouring {
        Some((ListTarget::Vertices, c)) => (c.clone(), "graph"),
        Some(_) => return Err(usage("stored colouring must colour vertices")),
        None => (exact_frugal_chromatic(g, positive(a.k)?, g.vertex_count().max(1), budget)?.witness, "exact"),
    };
    let r = colour_square_via_classes(g, rot, a.k, &frugal, budget)?;
    let sq = square(g);
    let special_ok = r.classes.iter().all(|c| c.largest_special_set <= a.k);
    let (result, exit) = verdict_json(&sq, &validate_proper(&sq, &r.colouring));
    let outcome = merge(
        result,
        json!({
            "frugal_source": source,
            "frugal_colouring": named(g, ListTarget::Vertices, &frugal),
            "colouring": named(g, ListTarget::Vertices, &r.colouring),
            "total_colours": r.total_colours,
            "frugal_colours": r.frugal_colours,
            "product_bound": r.product_bound,
            "classes": r.classes,
            "special_sets_within_k": special_ok,
        }),
    );
    if let Some(path) = &a.output {
        // proper on the square is exactly 1-frugal on the graph
        let saved = Loaded { colouring: Some((ListTarget::Vertices, r.colouring.clone())), ..loaded.clone() };
        write_file(path, &emit_graph_json(&saved))?;
    }
    let exit = if special_ok { exit } else { 1 };
    let parameters = json!({ "file": a.file.display().to_string(), "k": a.k, "budget": budget });
    Ok(Outcome { exit, ..Outcome::new(parameters, outcome) })
}

fn parse_girth(s: &str) -> Result<Girth, CliError> {
    if s.eq_ignore_ascii_case("infinite") || s.eq_ignore_ascii_case("inf") {
        return Ok(Girth::Infinite);
    }
    s.parse().map(Girth::Finite).map_err(|_| usage(format!("bad girth {s:?}")))
}

fn bounds(a: BoundsArgs) -> Result<Outcome, CliError> {
    let k = positive(a.k)?;
    let girth = a.girth.as_deref().map(parse_girth).transpose()?;
    let families: Vec<BoundFamily> = if a.family == "all" {
        BoundFamily::ALL.to_vec()
    } else {
        vec![a.family.parse().map_err(CliError::Usage)?]
    };
    let specs: Vec<_> = families.into_iter().map(|f| bound_value(f, a.delta, k, girth)).collect();
    let parameters = json!({ "family": a.family, "delta": a.delta, "k": k, "girth": a.girth });
    let outcome = json!({ "values": specs.iter().map(|s| (s.family.name(), s.value)).collect::<BTreeMap<_, _>>() });
    Ok(Outcome { bounds: specs, ..Outcome::new(parameters, outcome) })
}
