use std::str::FromStr;

use zeropoint::VulnProfile;

/// `vulnerable`, `hardened`, or five comma-separated per-step flags.
///
/// A flag token is vulnerable for `v`, `vuln`, `1`, `true` and hardened for
/// `h`, `hard`, `0`, `false`. Tokens are case-insensitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileSpec(pub VulnProfile);

impl FromStr for ProfileSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vulnerable" => return Ok(ProfileSpec(VulnProfile::VULNERABLE)),
            "hardened" => return Ok(ProfileSpec(VulnProfile::HARDENED)),
            _ => {}
        }
        let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
        if tokens.len() != 5 {
            return Err(format!(
                "profile must be 'vulnerable', 'hardened' or five comma-separated flags, got '{s}'"
            ));
        }
        let mut flags = [false; 5];
        for (slot, tok) in flags.iter_mut().zip(&tokens) {
            *slot = match tok.to_ascii_lowercase().as_str() {
                "v" | "vuln" | "1" | "true" => true,
                "h" | "hard" | "0" | "false" => false,
                other => return Err(format!("unknown profile flag '{other}'")),
            };
        }
        Ok(ProfileSpec(VulnProfile::from_flags(flags)))
    }
}
