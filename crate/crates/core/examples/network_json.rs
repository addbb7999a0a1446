//! Round-trips a network through JSON with exact rational weights and prints
//! the full complexity report.

use plmorse::complexity::analyze;
use plmorse::network::Network;

const NET: &str = r#"{
  "layers": [
    {"weights": [["1", "0"], ["0", "1"], ["-1", "-1"]], "bias": ["0", "0", "1"], "activation": "relu"},
    {"weights": [["1", "1", "1/2"]], "bias": ["0"], "activation": "identity"}
  ]
}"#;

fn main() -> plmorse::Result<()> {
    let net = Network::from_json_str(NET)?;
    assert_eq!(Network::from_json(&net.to_json())?.to_json(), net.to_json());
    let report = analyze(&net)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("JSON values serialize"));
    Ok(())
}
