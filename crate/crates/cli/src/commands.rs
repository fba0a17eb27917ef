use std::fmt::Write as _;

use genus_range::cache::ResultCache;
use genus_range::ranges::{
    conjectures_from_table, nested_triple_lemma_from_table, range_of_profile,
    realization_chart_from_table, RealizationChart,
};
use genus_range::surface::genus_from_boundaries;
use genus_range::words::NormalizedWords;
use genus_range::{
    build_rotation_system, canonical_form, end_edge_survey, genus_profile_with, gr_table, parse,
    realization_chart, trace_faces, witness, AttachmentConfig, Budget, EndEdgeTrace, Extremum,
    RangeTable,
};
use serde_json::json;

use crate::error::CliError;
use crate::output::Outcome;
use crate::svg;

pub struct Context {
    pub budget: Budget,
    pub cache: Option<ResultCache>,
}

impl Context {
    /// Loads the table for `n` from the cache, computing and storing it on a miss.
    fn table(&self, n: usize) -> Result<RangeTable, CliError> {
        self.budget.check_table(n)?;
        if let Some(cache) = &self.cache {
            let path = cache.path("table", n);
            match cache.load::<RangeTable>("table", n) {
                Ok(Some(table)) if table.n == n => {
                    eprintln!("cache hit: {}", path.display());
                    return Ok(table);
                }
                Ok(_) => {}
                Err(e) => eprintln!("warning: ignoring cache entry {}: {e}", path.display()),
            }
        }
        let table = gr_table(n, &self.budget)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.store("table", n, &table) {
                eprintln!(
                    "warning: could not write {}: {e}",
                    cache.path("table", n).display()
                );
            }
        }
        Ok(table)
    }
}

fn end_edge_name(c: EndEdgeTrace) -> &'static str {
    match c {
        EndEdgeTrace::Single => "single",
        EndEdgeTrace::Double => "double",
    }
}

pub fn range(ctx: &Context, word: &str, with_profile: bool) -> Result<Outcome, CliError> {
    let w = parse(word)?;
    let profile = genus_profile_with(&w, &ctx.budget)?;
    let gr = range_of_profile(&w, &profile)?;
    let mut results = json!({
        "word": w,
        "n": w.n(),
        "canonical": canonical_form(&w),
        "range": gr,
    });
    let mut text = format!("gr = {gr}\n");
    let mut rows = vec![vec!["word".into(), "lo".into(), "hi".into()]];
    rows.push(vec![w.to_string(), gr.lo.to_string(), gr.hi.to_string()]);
    if with_profile {
        results["profile"] = json!(profile.counts);
        rows = vec![vec!["genus".into(), "configurations".into()]];
        for (g, count) in &profile.counts {
            let _ = writeln!(text, "genus {g}: {count}");
            rows.push(vec![g.to_string(), count.to_string()]);
        }
    }
    Ok(Outcome {
        parameters: json!({ "word": word, "profile": with_profile }),
        results,
        text,
        rows,
        svg: None,
    })
}

pub fn trace(word: &str, attach: &str) -> Result<Outcome, CliError> {
    let w = parse(word)?;
    let config = AttachmentConfig::parse(attach, w.len())?;
    let faces = trace_faces(&build_rotation_system(&w, &config)?);
    let b = faces.count();
    let genus = genus_from_boundaries(w.n(), b);
    let end_edge = genus_range::surface::end_edge_of(&w, &faces);
    let face_lists: Vec<Vec<String>> = faces
        .faces()
        .iter()
        .map(|f| f.iter().map(ToString::to_string).collect())
        .collect();
    let mut text = format!(
        "b = {b}\ngenus = {genus}\nend edge = {}\n",
        end_edge_name(end_edge)
    );
    let mut rows = vec![vec!["face".into(), "darts".into()]];
    for (i, f) in face_lists.iter().enumerate() {
        let _ = writeln!(text, "face {i}: {}", f.join(" "));
        rows.push(vec![i.to_string(), f.join(" ")]);
    }
    Ok(Outcome {
        parameters: json!({ "word": word, "attach": attach }),
        results: json!({
            "word": w,
            "attach": config.to_string(),
            "boundaries": b,
            "genus": genus,
            "end_edge": end_edge_name(end_edge),
            "faces": face_lists,
        }),
        text,
        rows,
        svg: None,
    })
}

pub fn table(ctx: &Context, n: usize) -> Result<Outcome, CliError> {
    let table = ctx.table(n)?;
    let counts = table.class_counts();
    let ranges: Vec<_> = counts
        .iter()
        .map(|(gr, count)| {
            let example = table.words_with(*gr).into_iter().next();
            json!({ "lo": gr.lo, "hi": gr.hi, "classes": count, "example": example })
        })
        .collect();
    let mut text = format!(
        "n = {n}: {} classes, {} ranges\n",
        table.classes.len(),
        counts.len()
    );
    let mut rows = vec![vec![
        "lo".into(),
        "hi".into(),
        "classes".into(),
        "example".into(),
    ]];
    for (gr, count) in &counts {
        let example = table.words_with(*gr)[0].to_string();
        let _ = writeln!(
            text,
            "{:<7} {count:>6} classes  e.g. {example}",
            gr.to_string()
        );
        rows.push(vec![
            gr.lo.to_string(),
            gr.hi.to_string(),
            count.to_string(),
            example,
        ]);
    }
    Ok(Outcome {
        parameters: json!({ "n": n }),
        results: json!({ "n": n, "classes": table.classes.len(), "ranges": ranges }),
        text,
        rows,
        svg: None,
    })
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

pub fn conjectures(ctx: &Context, n: usize) -> Result<Outcome, CliError> {
    let table = ctx.table(n)?;
    let report = conjectures_from_table(&table);
    let lemma = nested_triple_lemma_from_table(&table);
    let words = |ws: &[genus_range::ChordWord]| {
        ws.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let checks = [
        (
            "two-element ranges",
            report.two_element_ranges.holds,
            words(&report.two_element_ranges.counterexamples),
        ),
        (
            "[0,1] witnesses",
            report.zero_one_unique.holds,
            words(&report.zero_one_unique.found),
        ),
        (
            "[1,2] witnesses",
            report.one_two_unique.holds,
            words(&report.one_two_unique.found),
        ),
        ("nested triple lemma", lemma.holds, words(&lemma.violations)),
    ];
    let mut text = String::new();
    let mut rows = vec![vec!["check".into(), "holds".into(), "words".into()]];
    for (name, ok, ws) in &checks {
        let _ = writeln!(
            text,
            "{name}: {}",
            format!("{} {ws}", holds(*ok)).trim_end()
        );
        rows.push(vec![name.to_string(), ok.to_string(), ws.clone()]);
    }
    Ok(Outcome {
        parameters: json!({ "n": n }),
        results: json!({
            "n": n,
            "all_hold": report.all_hold() && lemma.holds,
            "conjectures": report,
            "nested_triple": lemma,
        }),
        text,
        rows,
        svg: None,
    })
}

pub fn witness_cmd(ctx: &Context, n: usize, g: u32, g_max: u32) -> Result<Outcome, CliError> {
    let found = witness(n, g, g_max, &ctx.budget)?;
    let status = match found.verified {
        Some(gr) => format!("verified {gr}"),
        None => "not verified (beyond the exhaustive budget)".to_string(),
    };
    Ok(Outcome {
        parameters: json!({ "n": n, "g": g, "g_max": g_max }),
        results: serde_json::to_value(&found).expect("witness serializes"),
        text: format!(
            "word = {}\nconstruction = {}\n{status}\n",
            found.word, found.construction
        ),
        rows: vec![
            vec![
                "n".into(),
                "g".into(),
                "g_max".into(),
                "word".into(),
                "construction".into(),
                "verified".into(),
            ],
            vec![
                n.to_string(),
                g.to_string(),
                g_max.to_string(),
                found.word.to_string(),
                found.construction.to_string(),
                found.verified.is_some().to_string(),
            ],
        ],
        svg: None,
    })
}

pub fn chart(ctx: &Context, n: usize) -> Result<Outcome, CliError> {
    let chart: RealizationChart = if ctx.budget.check_table(n).is_ok() {
        realization_chart_from_table(&ctx.table(n)?)
    } else {
        realization_chart(n, &ctx.budget)?
    };
    let mut rows = vec![vec!["a".into(), "b".into(), "status".into()]];
    rows.extend(
        chart
            .points
            .iter()
            .map(|p| vec![p.a.to_string(), p.b.to_string(), p.status.to_string()]),
    );
    Ok(Outcome {
        parameters: json!({ "n": n }),
        results: serde_json::to_value(&chart).expect("chart serializes"),
        text: svg::text_grid(&chart),
        rows,
        svg: Some(svg::render(&chart)),
    })
}

pub fn classify(ctx: &Context, word: &str) -> Result<Outcome, CliError> {
    let w = parse(word)?;
    let survey = end_edge_survey(&w, &ctx.budget)?;
    let gr = range_of_profile(&w, &survey.profile())?;
    let class = survey.class();
    let summary = class.summary();
    let flags: serde_json::Map<String, serde_json::Value> = class
        .flags()
        .into_iter()
        .map(|(k, v)| (k, v.into()))
        .collect();
    let mut text = format!("{summary}\n");
    let mut rows = vec![vec![
        "extremum".into(),
        "genus".into(),
        "single".into(),
        "double".into(),
    ]];
    for (q, g, c) in [
        (Extremum::Min, gr.lo, class.min),
        (Extremum::Max, gr.hi, class.max),
    ] {
        let _ = writeln!(text, "{q} genus {g}: {} single, {} double", c[0], c[1]);
        rows.push(vec![
            q.to_string(),
            g.to_string(),
            c[0].to_string(),
            c[1].to_string(),
        ]);
    }
    Ok(Outcome {
        parameters: json!({ "word": word }),
        results: json!({
            "word": w,
            "range": gr,
            "summary": summary,
            "min": { "genus": gr.lo, "single": class.min[0], "double": class.min[1] },
            "max": { "genus": gr.hi, "single": class.max[0], "double": class.max[1] },
            "flags": flags,
        }),
        text,
        rows,
        svg: None,
    })
}

pub fn enumerate(n: usize, all: bool) -> Result<Outcome, CliError> {
    let canonical = genus_range::enumerate_words(n)?;
    let words: Vec<String> = if all {
        NormalizedWords::new(n).map(|w| w.to_string()).collect()
    } else {
        canonical.map(|w| w.to_string()).collect()
    };
    let mut text = String::new();
    let mut rows = vec![vec!["word".into()]];
    for w in &words {
        text.push_str(w);
        text.push('\n');
        rows.push(vec![w.clone()]);
    }
    Ok(Outcome {
        parameters: json!({ "n": n, "all": all }),
        results: json!({ "n": n, "all": all, "count": words.len(), "words": words }),
        text,
        rows,
        svg: None,
    })
}
