use serde_json::{json, Map, Value};
use symplefs::exact::Rational;
use symplefs::lefschetz::{
    check_torsion_necessary, congruence_index, euler_char_adelic_numeric,
    euler_char_fixed_component, genus_fuchsian, h1_signature_classes, lefschetz_number,
    modular_form_dim, LefschetzInput, SignatureClass,
};
use symplefs::numberfield::{dedekind_zeta_neg, ideal_from_integer, TotallyRealField};
use symplefs::par::{map_ordered, Execution};
use symplefs::quaternion::QuaternionAlgebra;

use crate::render::{big_integer, to_value, Payload};
use crate::request::RequestConfig;
use crate::CliError;

/// Largest number of rows `table` will produce.
pub const MAX_TABLE_ROWS: u64 = 10_000;
/// Relative tolerance reported with the numeric cross-check.
pub const ADELIC_TOLERANCE: f64 = 1e-5;

fn echo(input: &LefschetzInput) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("field".into(), json!(input.field().to_string()));
    m.insert("algebra".into(), json!(input.algebra().to_string()));
    m.insert("n".into(), json!(input.n()));
    m.insert("level".into(), to_value(input.level()));
    m.insert("level_norm".into(), big_integer(&input.level().norm()));
    m
}

fn merge(mut base: Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(more) = extra {
        base.extend(more);
    }
    Value::Object(base)
}

pub fn zeta(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let field = cfg.field()?;
    let jmax = cfg.jmax.unwrap_or(3);
    if jmax == 0 {
        return Err(CliError::Usage("--jmax must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for j in 1..=jmax {
        let value = dedekind_zeta_neg(&field, j)?;
        rows.push(vec![
            json!(field.to_string()),
            json!(j),
            json!(1 - 2 * i64::from(j)),
            to_value(&value),
        ]);
    }
    Ok(Payload::Table {
        headers: vec!["field", "j", "s", "value"],
        rows,
    })
}

pub fn lefschetz(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let input = cfg.input()?;
    let report = lefschetz_number(&input)?;
    Ok(Payload::Record(merge(echo(&input), to_value(&report))))
}

pub fn euler_char(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let input = cfg.input()?;
    let r = input.algebra().ram_real_count();
    let classes = match &cfg.signature {
        Some(text) => vec![SignatureClass::parse(input.n(), text)?],
        None => h1_signature_classes(r, input.n())?,
    };
    let mut components = Vec::new();
    let mut total = Rational::zero();
    let mut warnings = Vec::new();
    for class in &classes {
        let report = euler_char_fixed_component(&input, class)?;
        total += &report.value;
        warnings = report.warnings.clone();
        let mut entry = json!({
            "signature_class": report.signature_class,
            "value": report.value,
            "binomial_factor": report.binomial_factor,
            "m_factors": report.m_factors,
        });
        if let Some(terms) = cfg.adelic_terms {
            let est =
                euler_char_adelic_numeric(input.algebra(), input.n(), input.level(), class, terms)?;
            let exact = report.value.to_f64();
            let rel = ((est.value - exact) / exact).abs();
            entry["adelic_numeric"] = json!({
                "value": est.value,
                "exact_factor": est.exact_factor,
                "relative_error": rel,
                "tolerance": ADELIC_TOLERANCE,
                "agrees": rel < ADELIC_TOLERANCE,
            });
        }
        components.push(entry);
    }
    let mut out = echo(&input);
    out.insert("components".into(), Value::Array(components));
    out.insert("total".into(), to_value(&total));
    out.insert("warnings".into(), to_value(&warnings));
    Ok(Payload::Record(Value::Object(out)))
}

pub fn index(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let field = cfg.field()?;
    let algebra = cfg.algebra(&field)?;
    let level = cfg.level(&field)?;
    let idx = congruence_index(&algebra, cfg.n(), &level)?;
    Ok(Payload::Record(json!({
        "field": field.to_string(),
        "algebra": algebra.to_string(),
        "n": cfg.n(),
        "level": level,
        "index": big_integer(&idx),
    })))
}

pub fn genus(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let field = cfg.field()?;
    let algebra = cfg.algebra(&field)?;
    let level = cfg.level(&field)?;
    let report = genus_fuchsian(&algebra, &level, cfg.assume_torsion_free())?;
    let mut dims = Vec::new();
    for &k in cfg.weights.as_deref().unwrap_or(&[]) {
        dims.push(json!({"weight": k, "dim": modular_form_dim(report.genus, k)?}));
    }
    Ok(Payload::Record(json!({
        "field": field.to_string(),
        "algebra": algebra.to_string(),
        "level": level,
        "genus": report.genus,
        "b1": report.b1,
        "chi": report.chi,
        "dims": dims,
        "warnings": report.warnings,
    })))
}

/// Parses an inclusive range `a..b`; `a > b` gives an empty range.
pub fn parse_levels(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("bad level range {text:?}; expected a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if b >= a && b - a + 1 > MAX_TABLE_ROWS {
        return Err(CliError::Usage(format!(
            "level range has {} rows; at most {MAX_TABLE_ROWS} allowed",
            b - a + 1
        )));
    }
    Ok((a, b))
}

pub const TABLE_HEADERS: [&str; 9] = [
    "level",
    "norm",
    "status",
    "index",
    "lefschetz",
    "chi",
    "genus",
    "warnings",
    "error",
];

struct TableSetup {
    field: TotallyRealField,
    algebra: QuaternionAlgebra,
    n: u32,
    trace: Rational,
    assume: bool,
}

fn table_row(setup: &TableSetup, level_int: u64) -> Vec<Value> {
    let mut row = vec![json!(level_int.to_string()), Value::Null, Value::Null];
    row.resize(TABLE_HEADERS.len(), Value::Null);
    let fail = |mut row: Vec<Value>, status: &str, err: String| {
        row[2] = json!(status);
        row[8] = json!(err);
        row
    };
    let level = match ideal_from_integer(&setup.field, level_int) {
        Ok(l) => l,
        Err(e) => return fail(row, "invalid level", e.to_string()),
    };
    row[1] = big_integer(&level.norm());
    match check_torsion_necessary(&setup.field, &level) {
        Ok(false) if !setup.assume => {
            row[2] = json!("torsion check failed");
            return row;
        }
        Err(e) => return fail(row, "error", e.to_string()),
        _ => {}
    }
    let input = match LefschetzInput::new(
        setup.algebra.clone(),
        setup.n,
        level.clone(),
        setup.trace.clone(),
    ) {
        Ok(i) => i.assume_torsion_free(setup.assume),
        Err(e) => return fail(row, "invalid input", e.to_string()),
    };
    let computed = (|| -> symplefs::Result<()> {
        row[3] = big_integer(&congruence_index(&setup.algebra, setup.n, &level)?);
        let report = lefschetz_number(&input)?;
        row[4] = to_value(&report.value);
        let mut chis = Vec::new();
        for class in h1_signature_classes(setup.algebra.ram_real_count(), setup.n)? {
            chis.push(to_value(&euler_char_fixed_component(&input, &class)?.value));
        }
        row[5] = Value::Array(chis);
        if setup.n == 1 && setup.algebra.is_fuchsian() {
            row[6] = json!(genus_fuchsian(&setup.algebra, &level, setup.assume)?.genus);
        }
        row[7] = to_value(&report.warnings);
        Ok(())
    })();
    match computed {
        Ok(()) => {
            row[2] = json!("ok");
            row
        }
        Err(e) => fail(row, "error", e.to_string()),
    }
}

pub fn table(cfg: &RequestConfig) -> Result<Payload, CliError> {
    let field = cfg.field()?;
    let algebra = cfg.algebra(&field)?;
    let text = cfg
        .levels
        .as_deref()
        .ok_or_else(|| CliError::Usage("a level range is required (--levels a..b)".into()))?;
    let (a, b) = parse_levels(text)?;
    let levels: Vec<u64> = (a..=b).collect();
    let setup = TableSetup {
        field,
        algebra,
        n: cfg.n(),
        trace: cfg.trace_w()?,
        assume: cfg.assume_torsion_free(),
    };
    let rows = map_ordered(Execution::default(), &levels, |&lv| table_row(&setup, lv));
    Ok(Payload::Table {
        headers: TABLE_HEADERS.to_vec(),
        rows,
    })
}
