//! End-to-end tests against the compiled `crisis` binary.

use std::io::Write;
use std::process::{Command, Output};

fn crisis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crisis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

const STANDARD: &[&str] = &[
    "--s0",
    "100",
    "--strike",
    "100",
    "--rate",
    "0.05",
    "--sigma",
    "0.2",
    "--maturity",
    "1",
];

#[test]
fn price_json_is_the_benchmark_value() {
    let out = crisis(&[&["price"], STANDARD, &["--alpha", "0"]].concat());
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let price = json["price"].as_f64().unwrap();
    assert!((price - 10.450_583_572_185_566).abs() <= 1e-12);
}

#[test]
fn price_csv_has_header_and_full_precision() {
    let out = crisis(&[&["price"], STANDARD, &["--alpha", "0", "--format", "csv"]].concat());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("price"));
    let value: f64 = lines.next().unwrap().parse().unwrap();
    assert!((value - 10.450_583_572_185_566).abs() <= 1e-12);
}

#[test]
fn greeks_at_alpha_zero_match_the_black_scholes_oracle() {
    let out = crisis(&[&["greeks"], STANDARD, &["--alpha", "0"]].concat());
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let oracle = crisis_pricing::bs_oracle_ladder(
        100.0,
        100.0,
        0.05,
        0.2,
        1.0,
        crisis_pricing::OptionKind::Call,
    )
    .unwrap();
    let expectations = [
        ("price", oracle.price.value()),
        ("delta", oracle.delta),
        ("gamma", oracle.gamma),
        ("theta", oracle.theta),
        ("rho", oracle.rho),
        ("vega", oracle.vega),
        ("vanna", oracle.vanna),
        ("volga", oracle.volga),
        ("vega_bleed", oracle.vega_bleed),
        ("strike_gamma", oracle.strike_gamma),
    ];
    for (field, expected) in expectations {
        let got = json[field].as_f64().unwrap();
        let scale = expected.abs().max(1.0);
        assert!(
            (got - expected).abs() <= 1e-10 * scale,
            "{field}: {got} vs {expected}"
        );
    }
}

#[test]
fn per_day_divides_theta_only() {
    let yearly = crisis(&[&["greeks"], STANDARD, &["--alpha", "2"]].concat());
    let daily = crisis(&[&["greeks"], STANDARD, &["--alpha", "2", "--per-day"]].concat());
    let y: serde_json::Value = serde_json::from_str(&stdout(&yearly)).unwrap();
    let d: serde_json::Value = serde_json::from_str(&stdout(&daily)).unwrap();
    let ty = y["theta"].as_f64().unwrap();
    let td = d["theta"].as_f64().unwrap();
    assert!((ty / 365.0 - td).abs() <= 1e-15);
    assert_eq!(y["vega_bleed"], d["vega_bleed"]);
    assert_eq!(y["price"], d["price"]);
}

#[test]
fn surface_csv_round_trips_byte_identically() {
    let out = crisis(
        &[
            &["surface"],
            STANDARD,
            &[
                "--alpha",
                "2",
                "--axis",
                "S:80:120:5",
                "--axis",
                "sigma:0.1:0.4:4",
                "--format",
                "csv",
            ],
        ]
        .concat(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    assert_eq!(
        header,
        "S,sigma,price,delta,gamma,theta,rho,vega,vanna,volga,vega_bleed,strike_gamma"
    );
    // Parse every numeric field and re-serialize with the same shortest
    // round-trip formatting; the result must be byte-identical.
    let mut rebuilt = header;
    rebuilt.push('\n');
    let mut rows = 0;
    for line in lines {
        let fields: Vec<String> = line
            .split(',')
            .map(|f| format!("{}", f.parse::<f64>().unwrap()))
            .collect();
        rebuilt.push_str(&fields.join(","));
        rebuilt.push('\n');
        rows += 1;
    }
    assert_eq!(rows, 20);
    assert_eq!(rebuilt, text);
}

#[test]
fn surface_json_records_carry_axis_coordinates_first() {
    let out = crisis(
        &[
            &["surface"],
            STANDARD,
            &["--alpha", "0", "--axis", "K:90:110:3"],
        ]
        .concat(),
    );
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = json.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "K",
            "price",
            "delta",
            "gamma",
            "theta",
            "rho",
            "vega",
            "vanna",
            "volga",
            "vega_bleed",
            "strike_gamma"
        ]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .iter()
        .collect::<Vec<_>>()
    );
    assert_eq!(rows[1]["K"].as_f64().unwrap(), 100.0);
}

#[test]
fn simulate_is_seed_deterministic() {
    let args: Vec<&str> = [
        &["simulate"][..],
        &STANDARD[..8], // model flags only, no strike needed but harmless
        &[
            "--alpha",
            "2",
            "--maturity",
            "1",
            "--paths",
            "4",
            "--seed",
            "9",
            "--format",
            "csv",
        ],
    ]
    .concat();
    let a = crisis(&args);
    let b = crisis(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));

    let mut other_seed = args.clone();
    let idx = other_seed.iter().position(|a| *a == "9").unwrap();
    other_seed[idx] = "10";
    let c = crisis(&other_seed);
    assert_ne!(stdout(&a), stdout(&c));

    // Shape: header + 51 default time rows when no axis is given.
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "time,path_0,path_1,path_2,path_3");
    assert_eq!(lines.len(), 52);
    let first_row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first_row, ["0", "100", "100", "100", "100"]);
}

#[test]
fn params_file_supplies_values_and_flags_override() {
    let dir = std::env::temp_dir();
    let path = dir.join("crisis_cli_params_test.json");
    let mut file = std::fs::File::create(&path).unwrap();
    write!(
        file,
        r#"{{"s0": 100, "rate": 0.05, "sigma": 0.2, "alpha": 0, "maturity": 1, "time": 0, "strike": 100, "kind": "call"}}"#
    )
    .unwrap();
    let from_file = crisis(&["price", "--params", path.to_str().unwrap()]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert!((v["price"].as_f64().unwrap() - 10.450_583_572_185_566).abs() <= 1e-12);

    // --kind put overrides the file's call.
    let put = crisis(&["price", "--params", path.to_str().unwrap(), "--kind", "put"]);
    let vp: serde_json::Value = serde_json::from_str(&stdout(&put)).unwrap();
    assert!((vp["price"].as_f64().unwrap() - 5.573_526_022_256_968).abs() <= 1e-12);

    let _ = std::fs::remove_file(&path);
}

#[test]
fn exit_codes_follow_the_contract() {
    // Usage: unknown flag.
    let usage = crisis(&["price", "--nope", "1"]);
    assert_eq!(usage.status.code(), Some(2));

    // Usage: missing required value.
    let missing = crisis(&["price", "--s0", "100"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("missing required value"));

    // Domain: evaluation at the maturity (tau = 0).
    let domain = crisis(&[&["price"], STANDARD, &["--alpha", "0", "--time", "1"]].concat());
    assert_eq!(domain.status.code(), Some(1));
    assert!(stderr(&domain).contains("time to maturity"));

    // Domain: shifted strike invariant, named on stderr.
    let shifted = crisis(&[
        "price",
        "--s0",
        "100",
        "--strike",
        "10",
        "--rate",
        "0.05",
        "--sigma",
        "0.2",
        "--alpha",
        "-3",
        "--maturity",
        "1",
    ]);
    assert_eq!(shifted.status.code(), Some(1));
    assert!(stderr(&shifted).contains("shifted strike"));

    // Usage: odd antithetic path count.
    let odd = crisis(
        &[
            &["simulate"],
            STANDARD,
            &["--alpha", "0", "--paths", "3", "--antithetic"],
        ]
        .concat(),
    );
    assert_eq!(odd.status.code(), Some(2));

    // Usage: unknown validation grid.
    let grid = crisis(&["validate", "--grid", "fancy", "--paths", "1000"]);
    assert_eq!(grid.status.code(), Some(2));
}

#[test]
fn validate_emits_the_report_and_passes() {
    let out = crisis(&[
        "validate", "--grid", "default", "--paths", "20000", "--seed", "42",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["passed"], serde_json::json!(true));
    let suites = json["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 7);
    let entries = json["ledger"]["entries"].as_array().unwrap();
    assert!(entries.len() >= 7);
    for entry in entries {
        for field in [
            "quantity",
            "paper_location",
            "printed_value",
            "implemented_value",
            "fd_value",
            "verdict",
        ] {
            assert!(entry.get(field).is_some(), "entry missing {field}");
        }
    }
    // The human summary goes to stderr, one line per suite.
    let diag = stderr(&out);
    assert!(diag.contains("PASS black_scholes_reduction"));
    assert!(diag.contains("overall: PASS"));
    // Determinism: identical seeds give identical payloads.
    let again = crisis(&[
        "validate", "--grid", "default", "--paths", "20000", "--seed", "42",
    ]);
    assert_eq!(stdout(&out), stdout(&again));
}

#[test]
fn validate_rejects_csv_format() {
    let out = crisis(&["validate", "--paths", "1000", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}
