//! Flat renderings of JSON reports.

use serde_json::Value;

fn flatten(v: &Value, path: &str, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(x, &join(k), rows);
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &join(&i.to_string()), rows);
            }
        }
        Value::String(s) => rows.push((path.to_string(), s.clone())),
        other => rows.push((path.to_string(), other.to_string())),
    }
}

pub fn tsv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(v, "", &mut rows);
    let mut out = String::from("key\tvalue\n");
    for (k, x) in rows {
        out.push_str(&format!("{k}\t{}\n", x.replace(['\t', '\n'], " ")));
    }
    out
}

pub fn markdown(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(v, "", &mut rows);
    let mut out = String::from("| key | value |\n|---|---|\n");
    for (k, x) in rows {
        let esc = |s: &str| s.replace('|', "\\|").replace('\n', " ");
        out.push_str(&format!("| {} | {} |\n", esc(&k), esc(&x)));
    }
    out
}
