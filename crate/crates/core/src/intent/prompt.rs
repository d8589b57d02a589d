//! Few-shot prompt assembly.

use serde::Deserialize;

use crate::scene::AtomCommand;

const BUILTIN: &str = include_str!("../../data/prompt_examples.json");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PromptExample {
    pub speech: String,
    /// AtomCommand JSON exactly as it appears in the prompt.
    pub command: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PromptBundle {
    #[serde(default)]
    pub header: String,
    pub separator: String,
    pub examples: Vec<PromptExample>,
}

impl PromptBundle {
    pub fn builtin() -> PromptBundle {
        PromptBundle::from_json(BUILTIN).expect("built-in prompt bundle is valid")
    }

    /// Parses a bundle and checks that every example is single-line and
    /// carries a valid AtomCommand.
    pub fn from_json(text: &str) -> Result<PromptBundle, String> {
        let bundle: PromptBundle = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if bundle.separator.trim().is_empty() || bundle.separator.contains('\n') {
            return Err("separator must be a non-empty single line".into());
        }
        for (i, ex) in bundle.examples.iter().enumerate() {
            if ex.speech.contains('\n') || ex.command.contains('\n') {
                return Err(format!("example {i} spans several lines"));
            }
            let cmd: AtomCommand =
                serde_json::from_str(&ex.command).map_err(|e| format!("example {i}: {e}"))?;
            cmd.check().map_err(|e| format!("example {i}: {e}"))?;
        }
        Ok(bundle)
    }

    /// Header, then each example as `SPEECH:`/`ATOMCOMMAND:` lines followed by
    /// the separator, then the user's speech and an open `ATOMCOMMAND:`.
    pub fn render(&self, speech: &str) -> String {
        let mut out = String::new();
        if !self.header.is_empty() {
            out.push_str(&self.header);
            out.push('\n');
        }
        for ex in &self.examples {
            out.push_str(&format!("SPEECH:{}\nATOMCOMMAND:{}\n{}\n", ex.speech, ex.command, self.separator));
        }
        // Line breaks in the speech would read as extra prompt fields.
        let speech = speech.split_whitespace().collect::<Vec<_>>().join(" ");
        out.push_str(&format!("SPEECH:{speech}\nATOMCOMMAND:"));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_example_one_separator() {
        let b = PromptBundle {
            header: String::new(),
            separator: "###".into(),
            examples: vec![PromptExample { speech: "Delete cube1".into(), command: r#"{"deleteObject":{"id":"cube1"}}"#.into() }],
        };
        let p = b.render("Make cube1 red");
        assert_eq!(p.matches("###").count(), 1);
        assert_eq!(
            p,
            "SPEECH:Delete cube1\nATOMCOMMAND:{\"deleteObject\":{\"id\":\"cube1\"}}\n###\nSPEECH:Make cube1 red\nATOMCOMMAND:"
        );
    }

    #[test]
    fn empty_user_text() {
        assert!(PromptBundle::builtin().render("").ends_with("###\nSPEECH:\nATOMCOMMAND:"));
    }

    #[test]
    fn builtin_has_both_listings_verbatim() {
        let b = PromptBundle::builtin();
        assert_eq!(b.examples[1].speech, "When the variable building is equal to 3, then make the table3 play a noise");
        assert_eq!(b.examples[1].command, r#"{"createCommand":{"newCommand":"forever{if(building==3){PlaySound('table3');}}"}}"#);
        assert!(b.examples[0].command.contains("Play('noise')"));
    }

    #[test]
    fn examples_cover_every_builtin() {
        let b = PromptBundle::builtin();
        let reg = crate::runtime::BuiltinRegistry::standard();
        let all = b.examples.iter().map(|e| e.command.as_str()).collect::<String>();
        for entry in reg.entries() {
            assert!(all.contains(&format!("{}(", entry.name)), "{} has no example", entry.name);
        }
    }

    #[test]
    fn header_and_newlines() {
        let mut b = PromptBundle::builtin();
        b.header = "Translate speech into commands.".into();
        let p = b.render("make\ncube1  red");
        assert!(p.starts_with("Translate speech into commands.\nSPEECH:"));
        assert!(p.ends_with("SPEECH:make cube1 red\nATOMCOMMAND:"));
    }

    #[test]
    fn rejects_invalid_example() {
        let bad = serde_json::json!({
            "separator": "###",
            "examples": [{"speech": "x", "command": r#"{"createCommand":{"newCommand":"forever{"}}"#}],
        });
        assert!(PromptBundle::from_json(&bad.to_string()).is_err());
    }
}
