use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::algorithm::RunResult;
use crate::error::{Error, Result};

use super::StatsSummary;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
    Both,
}

impl ExportFormat {
    fn csv(self) -> bool {
        matches!(self, ExportFormat::Csv | ExportFormat::Both)
    }

    fn json(self) -> bool {
        matches!(self, ExportFormat::Json | ExportFormat::Both)
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            "both" => Ok(ExportFormat::Both),
            _ => Err(Error::Config(format!("unknown format {s:?}; expected csv, json or both"))),
        }
    }
}

/// `DTLZ2_M3_glu_pbi` and so on.
pub fn file_stem(summary: &StatsSummary) -> String {
    let c = &summary.config;
    format!("{}_M{}_{}_{}", c.problem, c.objectives, c.variant, c.criterion.name())
}

/// One row per metric per summary, numbers in five-digit scientific notation.
pub fn summaries_to_csv<'a>(summaries: impl IntoIterator<Item = &'a StatsSummary>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Config(format!("csv encoding failed: {e}"));
    w.write_record(["problem", "M", "variant", "criterion", "metric", "best", "median", "worst"])
        .map_err(csv_err)?;
    for s in summaries {
        let c = &s.config;
        for m in &s.metrics {
            w.write_record([
                c.problem.name().to_string(),
                c.objectives.to_string(),
                c.variant.name().to_string(),
                c.criterion.name().to_string(),
                m.metric.name().to_string(),
                format!("{:.5E}", m.best),
                format!("{:.5E}", m.median),
                format!("{:.5E}", m.worst),
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Pretty JSON with every per-run value; floats round-trip exactly.
pub fn summary_to_json(summary: &StatsSummary) -> String {
    let mut s = serde_json::to_string_pretty(summary).expect("summary serializes");
    s.push('\n');
    s
}

pub fn summary_from_json(text: &str) -> Result<StatsSummary> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: PathBuf::from("<json>"),
        message: e.to_string(),
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes `<stem>.csv` and/or `<stem>.json` into `dir`, creating it if needed.
/// Returns the paths written.
pub fn export_results(summary: &StatsSummary, dir: &Path, format: ExportFormat) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let stem = file_stem(summary);
    let mut written = Vec::new();
    if format.csv() {
        let p = dir.join(format!("{stem}.csv"));
        write(&p, &summaries_to_csv([summary])?)?;
        written.push(p);
    }
    if format.json() {
        let p = dir.join(format!("{stem}.json"));
        write(&p, &summary_to_json(summary))?;
        written.push(p);
    }
    Ok(written)
}

/// Writes a three-objective final population as one `f1 f2 f3` line per
/// individual, in slot order.
pub fn emit_point_cloud(result: &RunResult, path: &Path) -> Result<()> {
    let m = result.ideal.len();
    if m != 3 {
        return Err(Error::Unsupported(format!(
            "point clouds are three-dimensional; this run has {m} objectives"
        )));
    }
    let mut out = String::new();
    for ind in &result.population {
        writeln!(out, "{} {} {}", ind.f[0], ind.f[1], ind.f[2]).expect("writing to a String");
    }
    write(path, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_experiment_detailed, ExperimentConfig};

    fn small() -> crate::harness::ExperimentOutcome {
        let mut c = ExperimentConfig::new("DTLZ2", 3);
        c.generations = Some(3);
        c.runs = 2;
        run_experiment_detailed(&c.resolve().unwrap()).unwrap()
    }

    #[test]
    fn csv_layout() {
        let o = small();
        let text = summaries_to_csv([&o.summary]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "problem,M,variant,criterion,metric,best,median,worst");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("DTLZ2,3,glu,pbi,igd,"));
        let best = lines[1].split(',').nth(5).unwrap();
        assert!(best.contains('E') && best.split('E').next().unwrap().len() == 7, "{best}");
    }

    #[test]
    fn json_round_trip_and_files() {
        let o = small();
        let back = summary_from_json(&summary_to_json(&o.summary)).unwrap();
        assert_eq!(back, o.summary);

        let dir = tempfile::tempdir().unwrap();
        let paths = export_results(&o.summary, dir.path(), ExportFormat::Both).unwrap();
        assert_eq!(paths.len(), 2);
        assert!(paths[0].ends_with("DTLZ2_M3_glu_pbi.csv"));

        let cloud = dir.path().join("cloud.txt");
        emit_point_cloud(&o.runs[0], &cloud).unwrap();
        let text = std::fs::read_to_string(&cloud).unwrap();
        assert_eq!(text.lines().count(), 91);
        let first: Vec<f64> = text.lines().next().unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(first, o.runs[0].population[0].f);
    }

    #[test]
    fn point_cloud_needs_three_objectives() {
        let mut c = ExperimentConfig::new("DTLZ2", 5);
        c.generations = Some(0);
        c.runs = 1;
        let o = run_experiment_detailed(&c.resolve().unwrap()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            emit_point_cloud(&o.runs[0], &dir.path().join("x")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn formats() {
        assert_eq!("JSON".parse::<ExportFormat>().unwrap(), ExportFormat::Json);
        assert!("xml".parse::<ExportFormat>().is_err());
    }
}
