//! Scenario files and their command-line equivalent.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use aelgate::Species;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::commands;
use crate::error::{CliError, CliResult};
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Transport,
    Busch,
    Rates,
    Gate,
    RepeatSwap,
    VosScan,
    Cooling,
    ImperfectCooling,
    Figure,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Transport => "transport",
            CommandName::Busch => "busch",
            CommandName::Rates => "rates",
            CommandName::Gate => "gate",
            CommandName::RepeatSwap => "repeat-swap",
            CommandName::VosScan => "vos-scan",
            CommandName::Cooling => "cooling",
            CommandName::ImperfectCooling => "imperfect-cooling",
            CommandName::Figure => "figure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum FigureName {
    #[serde(rename = "fig4a")]
    #[value(name = "fig4a")]
    Fig4a,
    #[serde(rename = "fig4b")]
    #[value(name = "fig4b")]
    Fig4b,
    #[serde(rename = "fig5a")]
    #[value(name = "fig5a")]
    Fig5a,
    #[serde(rename = "fig5b")]
    #[value(name = "fig5b")]
    Fig5b,
    #[serde(rename = "fig7")]
    #[value(name = "fig7")]
    Fig7,
    #[serde(rename = "figS1")]
    #[value(name = "figS1", alias = "figs1")]
    FigS1,
}

impl FigureName {
    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::Fig4a => "fig4a",
            FigureName::Fig4b => "fig4b",
            FigureName::Fig5a => "fig5a",
            FigureName::Fig5b => "fig5b",
            FigureName::Fig7 => "fig7",
            FigureName::FigS1 => "figS1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A complete run description, as read from a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub command: CommandName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<FigureName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub species: Option<String>,
    #[serde(default)]
    pub overrides: BTreeMap<String, Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Reserved; every computation is deterministic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub no_header: bool,
}

impl Scenario {
    pub fn new(command: CommandName) -> Self {
        Scenario {
            command,
            figure: None,
            species: None,
            overrides: BTreeMap::new(),
            output: None,
            format: None,
            seed: None,
            no_header: false,
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Validation(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        Self::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    /// Applies `--key value` tokens. Output options may appear among them.
    pub fn apply_tokens(&mut self, tokens: &[String]) -> CliResult<()> {
        let mut it = tokens.iter().peekable();
        while let Some(tok) = it.next() {
            let Some(body) = tok.strip_prefix("--") else {
                return Err(CliError::Validation(format!("expected --key value, got '{tok}'")));
            };
            let (key, inline) = match body.split_once('=') {
                Some((k, v)) => (k.to_string(), Some(v.to_string())),
                None => (body.to_string(), None),
            };
            if key == "no-header" || key == "no_header" {
                self.no_header = true;
                continue;
            }
            let value = match inline {
                Some(v) => v,
                None => it.next().cloned().ok_or_else(|| CliError::Validation(format!("missing value for --{key}")))?,
            };
            match key.as_str() {
                "species" => self.species = Some(value),
                "out" | "output" => self.output = Some(PathBuf::from(value)),
                "format" => {
                    self.format = Some(
                        Format::from_str(&value, true)
                            .map_err(|_| CliError::Validation(format!("format must be one of {{csv, json}}, got '{value}'")))?,
                    )
                }
                "seed" => {
                    self.seed = Some(
                        value.parse().map_err(|_| CliError::Validation(format!("seed expects an integer, got '{value}'")))?,
                    )
                }
                _ => {
                    self.overrides.insert(key.replace('-', "_"), Json::String(value));
                }
            }
        }
        Ok(())
    }
}

/// Scenario with species and parameters resolved and validated.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub command: CommandName,
    pub figure: Option<FigureName>,
    pub species: Species,
    pub params: Params,
}

pub fn prepare(s: &Scenario) -> CliResult<Prepared> {
    if s.command == CommandName::Figure && s.figure.is_none() {
        return Err(CliError::Validation(
            "figure command needs a figure name: one of {fig4a, fig4b, fig5a, fig5b, fig7, figS1}".into(),
        ));
    }
    if s.command != CommandName::Figure && s.figure.is_some() {
        return Err(CliError::Validation(format!("'figure' is only valid with the figure command, not {}", s.command.as_str())));
    }
    let species = match &s.species {
        Some(name) => name.parse::<Species>().map_err(|e| CliError::Validation(e.to_string()))?,
        None => commands::default_species(s.command, s.figure),
    };
    let mut params = Params::new(commands::specs(s.command, s.figure, species));
    for (key, value) in &s.overrides {
        params.set(key, value)?;
    }
    params.validate()?;
    commands::check(s.command, &params)?;
    Ok(Prepared { command: s.command, figure: s.figure, species, params })
}
