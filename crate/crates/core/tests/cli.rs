use fibra2::cli::main_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["fibra2"];
    argv.extend_from_slice(args);
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_fiber_text() {
    let (code, out, _) = run(&["classify", "fiber", "--family", "Z", "--k", "1", "--params", "0,1,1,0,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("EllipticCusp j=1\n"), "{out}");
}

#[test]
fn classify_field_examples() {
    let (code, out, _) = run(&["classify", "field", "--insep", "--b", "x^5+s"]);
    assert_eq!(code, 0);
    assert!(out.contains("genus 2, geometrically rational"), "{out}");

    let (code, out, _) = run(&["classify", "field", "--sep", "--a0", "1", "--a2", "0", "--b6", "s^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("genus 1"), "{out}");

    let (code, out, _) = run(&["classify", "field", "--sep", "--a0", "1", "--b6", "s", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["report"]["genus"], 2);
    assert_eq!(v["report"]["genus_bar"], 1);
    assert_eq!(v["report"]["case"], "i");
    assert_eq!(v["report"]["j1"], "0");
}

#[test]
fn sweep_counts_and_order() {
    let (code, out, _) = run(&["sweep", "--family", "Z", "--k", "1"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("Z,")).collect();
    assert_eq!(rows.len(), 32);
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
    assert!(out.starts_with("# fibra2 "), "{out}");
    assert!(out.lines().next().unwrap().contains("modulus=g+1"));

    let (_, out, _) = run(&["sweep", "--family", "Y", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn sweep_line() {
    let args =
        ["sweep", "--family", "Z", "--k", "1", "--set", "a0=0", "--set", "a2=1", "--set", "b0=1", "--set", "b4=0"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let classes: Vec<&str> =
        out.lines().filter(|l| l.starts_with("Z,")).map(|l| l.split(',').nth(5).unwrap()).collect();
    assert_eq!(classes, ["RationalCuspNode", "EllipticCusp"]);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "j-crosscheck", "--k", "4", "--samples", "30", "--seed", "5"];
    let strip = |s: String| s.lines().map(|l| l.split(", ").take(3).collect::<String>()).collect::<Vec<_>>();
    let (c1, o1, _) = run(&args);
    let (c2, o2, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert!(o1.starts_with("# fibra2 ") && o1.contains("seed=5"));
    // only the timing differs
    assert_eq!(strip(o1), strip(o2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    let (code, _, err) = run(&["classify", "fiber", "--k", "1", "--params", "1,x,0,0,0"]);
    assert_eq!(code, 1);
    assert!(err.contains("byte 2"), "{err}");
    // T^2 + T + s has no root in any constant extension of GF(2)(s)
    let (code, _, err) = run(&["classify", "field", "--insep", "--b", "x^5+x^3+s*x"]);
    assert_eq!(code, 2, "{err}");
}
