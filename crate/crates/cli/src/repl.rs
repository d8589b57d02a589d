//! Line-oriented authoring loop over one embedded session.
//!
//! Free text goes through the intent pipeline; lines starting with `:` are
//! meta-commands, each a single session operation.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use atomxr_core::runtime::PlayerInput;
use atomxr_core::scene::{read_spec, write_spec, SavedId, SceneError, SceneSpec, SceneStore};
use atomxr_core::session::{Mode, Session};
use atomxr_core::syntax::Diagnostic;

const HELP: &str = "\
meta-commands:
  :play | :edit            switch mode
  :undo | :redo | :reset   edit history
  :save <path>             write the spec to a file
  :load <path>             replace the spec from a file
  :scripts                 list script blocks
  :delete <blockId>        remove a script block
  :gaze <id...>            gaze targets for the next utterance
  :tick <n> [dx dy dz]     advance n ticks moving the player by (dx,dy,dz) each
  :press <id>              press a button before the next tick
  :trace                   print the full play trace
  :spec                    print the canonical spec
  :help | :quit";

/// Saves to a fixed path; loads from the path named by the id.
struct PathStore(PathBuf);

impl SceneStore for PathStore {
    fn save(&self, spec: &SceneSpec) -> Result<SavedId, SceneError> {
        write_spec(&self.0, spec)?;
        Ok(SavedId(self.0.display().to_string()))
    }

    fn load(&self, id: &SavedId) -> Result<SceneSpec, SceneError> {
        read_spec(&PathBuf::from(&id.0))
    }
}

pub struct Repl {
    session: Session,
    gaze: Vec<String>,
}

/// What the loop should do after a line.
#[derive(Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Quit,
}

fn warnings(out: &mut dyn Write, diags: &[Diagnostic]) {
    for d in diags {
        let _ = writeln!(out, "  {d}");
    }
}

impl Repl {
    pub fn new(session: Session) -> Self {
        Repl { session, gaze: Vec::new() }
    }

    #[cfg(test)]
    pub fn session(&self) -> &Session {
        &self.session
    }

    /// Reads lines until EOF or `:quit`. A prompt is shown when `prompt` is set.
    pub fn run(&mut self, input: impl BufRead, out: &mut dyn Write, prompt: bool) {
        let mut lines = input.lines();
        loop {
            if prompt {
                let _ = write!(out, "{}> ", self.session.mode());
                let _ = out.flush();
            }
            let Some(Ok(line)) = lines.next() else { return };
            if self.line(&line, out) == Flow::Quit {
                return;
            }
        }
    }

    pub fn line(&mut self, line: &str, out: &mut dyn Write) -> Flow {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Flow::Continue;
        }
        let result = match line.strip_prefix(':') {
            Some(meta) => self.meta(meta, out),
            None => self.utterance(line, out),
        };
        match result {
            Ok(flow) => flow,
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                Flow::Continue
            }
        }
    }

    fn utterance(&mut self, text: &str, out: &mut dyn Write) -> Result<Flow, String> {
        let gaze = std::mem::take(&mut self.gaze);
        let submitted = self.session.submit(text, &gaze).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "{}", submitted.applied);
        warnings(out, &submitted.translation.diagnostics);
        warnings(out, &submitted.references);
        Ok(Flow::Continue)
    }

    fn meta(&mut self, meta: &str, out: &mut dyn Write) -> Result<Flow, String> {
        let mut words = meta.split_whitespace();
        let cmd = words.next().unwrap_or("");
        let args: Vec<&str> = words.collect();
        let s = &mut self.session;
        let err = |e: atomxr_core::session::SessionError| e.to_string();
        match (cmd, args.as_slice()) {
            ("play", []) => {
                s.set_mode(Mode::Play).map_err(err)?;
                let _ = writeln!(out, "mode play");
            }
            ("edit", []) => {
                s.set_mode(Mode::Edit).map_err(err)?;
                let _ = writeln!(out, "mode edit");
            }
            ("undo", []) => {
                let msg = if s.undo().map_err(err)? { "undone" } else { "nothing to undo" };
                let _ = writeln!(out, "{msg}");
            }
            ("redo", []) => {
                let msg = if s.redo().map_err(err)? { "redone" } else { "nothing to redo" };
                let _ = writeln!(out, "{msg}");
            }
            ("reset", []) => {
                s.reset().map_err(err)?;
                let _ = writeln!(out, "scene cleared");
            }
            ("save", [path]) => {
                let id = s.save(&PathStore(PathBuf::from(path))).map_err(err)?;
                let _ = writeln!(out, "saved {id}");
            }
            ("load", [path]) => {
                s.load(&PathStore(PathBuf::from(path)), &SavedId(path.to_string())).map_err(err)?;
                let _ = writeln!(out, "loaded {path}");
            }
            ("scripts", []) => {
                if s.spec().scripts.is_empty() {
                    let _ = writeln!(out, "no scripts");
                }
                for b in &s.spec().scripts {
                    let _ = writeln!(out, "[{}]", b.block_id);
                    for l in b.source_text.lines() {
                        let _ = writeln!(out, "    {l}");
                    }
                }
            }
            ("delete", [block]) => {
                let applied = s.delete_script(block).map_err(err)?;
                let _ = writeln!(out, "{applied}");
            }
            ("gaze", ids) => {
                self.gaze = ids.iter().map(|id| id.to_string()).collect();
                let _ = writeln!(out, "gaze {}", if ids.is_empty() { "cleared".to_string() } else { ids.join(" ") });
            }
            ("tick", [n, rest @ ..]) if rest.is_empty() || rest.len() == 3 => {
                let n: u64 = n.parse().map_err(|_| format!("`{n}` is not a tick count"))?;
                let mut d = [0.0; 3];
                for (slot, v) in d.iter_mut().zip(rest) {
                    *slot = v.parse().map_err(|_| format!("`{v}` is not a number"))?;
                }
                let input = PlayerInput { tick: None, dx: d[0], dy: d[1], dz: d[2], press: None };
                let mut last = None;
                for _ in 0..n {
                    let frame = s.step(&input).map_err(err)?;
                    for e in &frame.new_events {
                        let _ = writeln!(out, "{}", e.to_json());
                    }
                    last = Some(frame);
                }
                if let Some(f) = last {
                    let [x, y, z] = f.player_position;
                    let _ = writeln!(out, "tick {} player {x} {y} {z}", f.tick + 1);
                }
            }
            ("press", [id]) => {
                s.press(id).map_err(err)?;
                let _ = writeln!(out, "pressed {id}");
            }
            ("trace", []) => {
                let rt = s.runtime().ok_or("not in play mode")?;
                for e in rt.trace() {
                    let _ = writeln!(out, "{}", e.to_json());
                }
            }
            ("spec", []) => {
                let _ = writeln!(out, "{}", s.spec().to_canonical_json());
            }
            ("help", []) => {
                let _ = writeln!(out, "{HELP}");
            }
            ("quit" | "q" | "exit", []) => return Ok(Flow::Quit),
            _ => return Err(format!("unknown or malformed meta-command `:{meta}`; try :help")),
        }
        Ok(Flow::Continue)
    }
}
