//! Statement execution, expression evaluation and built-in dispatch.

use rand::Rng;

use super::event::EventKind;
use super::state::{ObjectState, RuntimeState};
use super::value::Value;
use crate::scene::{id_prefix, Vec3, DEFAULT_ORIENTATION, DEFAULT_SIZE, DEFAULT_SPAWN_POSITION, PLAYER_ID};
use crate::syntax::{BinaryOp, Constant, ElseBranch, Expr, ExprKind, FunctionCall, IfBlock, Line, Span, StatementKind};

/// Where code is running: its block, and inside `onCollision` the two ids
/// bound to the type arguments.
pub(super) struct Ctx<'a> {
    pub block: &'a str,
    pub bound: Option<&'a [String; 2]>,
}

impl<'a> Ctx<'a> {
    pub fn new(block: &'a str) -> Self {
        Ctx { block, bound: None }
    }
}

/// A runtime error; aborts the statement it occurs in.
#[derive(Debug)]
pub(super) struct Fault {
    code: &'static str,
    message: String,
    span: Span,
}

fn fault(code: &'static str, message: impl Into<String>, span: Span) -> Fault {
    Fault { code, message: message.into(), span }
}

type Eval<T> = Result<T, Fault>;

impl RuntimeState {
    pub(super) fn exec_lines(&mut self, lines: &[Line], ctx: &Ctx) {
        for line in lines {
            self.exec_line(line, ctx);
        }
    }

    pub(super) fn exec_line(&mut self, line: &Line, ctx: &Ctx) {
        let result = match line {
            Line::Statement(s) => match &s.kind {
                StatementKind::Assignment(a) => self.eval(&a.value, ctx).map(|v| self.assign(&a.target, v)),
                StatementKind::Call(c) => self.call(c, ctx).map(drop),
            },
            Line::If(b) => {
                self.exec_if(b, ctx);
                Ok(())
            }
            // Nested listeners are rejected before play starts.
            Line::Listener(_) => Ok(()),
        };
        if let Err(f) = result {
            self.record_fault(ctx, f);
        }
    }

    fn exec_if(&mut self, b: &IfBlock, ctx: &Ctx) {
        let cond = match self.eval(&b.condition, ctx) {
            Ok(Value::Bool(c)) => c,
            Ok(v) => {
                let f = fault("type-mismatch", format!("if condition must be bool, got {}", v.kind()), b.condition.span);
                return self.record_fault(ctx, f);
            }
            Err(f) => return self.record_fault(ctx, f),
        };
        if cond {
            self.exec_lines(&b.then_block.lines, ctx);
        } else {
            match &b.else_branch {
                Some(ElseBranch::Block(blk)) => self.exec_lines(&blk.lines, ctx),
                Some(ElseBranch::If(inner)) => self.exec_if(inner, ctx),
                None => {}
            }
        }
    }

    /// Records the first failure at each site; later ones are only counted.
    fn record_fault(&mut self, ctx: &Ctx, f: Fault) {
        let key = (ctx.block.to_string(), f.span.start, f.span.end, f.code.to_string());
        if self.fault_sites.insert(key) {
            self.emit(EventKind::RuntimeError {
                block: ctx.block.to_string(),
                code: f.code.to_string(),
                message: f.message,
                span: f.span,
            });
        } else {
            self.suppressed_faults += 1;
        }
    }

    fn assign(&mut self, name: &str, value: Value) {
        if self.variables.get(name).is_some_and(|old| old.equals(&value)) {
            return;
        }
        self.variables.insert(name.to_string(), value.clone());
        self.emit(EventKind::VarChanged { name: name.to_string(), value });
    }

    pub(super) fn eval(&mut self, expr: &Expr, ctx: &Ctx) -> Eval<Value> {
        match &expr.kind {
            ExprKind::Constant(c) => Ok(constant(c)),
            ExprKind::Identifier(name) => match self.variables.get(name) {
                Some(v) => Ok(v.clone()),
                None => {
                    if self.warned_names.insert(name.clone()) {
                        self.warn("undeclared-variable", format!("`{name}` was read before any assignment; using null"));
                    }
                    Ok(Value::Null)
                }
            },
            ExprKind::Array(items) => items.iter().map(|e| self.eval(e, ctx)).collect::<Eval<_>>().map(Value::Array),
            ExprKind::Call(c) => self.call(c, ctx),
            ExprKind::Paren(inner) => self.eval(inner, ctx),
            ExprKind::Not(inner) => match self.eval(inner, ctx)? {
                Value::Bool(b) => Ok(Value::Bool(!b)),
                v => Err(fault("type-mismatch", format!("`!` needs a bool, got {}", v.kind()), expr.span)),
            },
            ExprKind::Binary { op, lhs, rhs } => {
                let l = self.eval(lhs, ctx)?;
                if matches!(op, BinaryOp::And | BinaryOp::Or) {
                    match (op, &l) {
                        (BinaryOp::And, Value::Bool(false)) => return Ok(Value::Bool(false)),
                        (BinaryOp::Or, Value::Bool(true)) => return Ok(Value::Bool(true)),
                        (_, Value::Bool(_)) => {}
                        _ => {
                            let msg = format!("`{}` needs bools, got {}", op.symbol(), l.kind());
                            return Err(fault("type-mismatch", msg, expr.span));
                        }
                    }
                }
                let r = self.eval(rhs, ctx)?;
                Value::binary(*op, &l, &r).map_err(|e| fault(e.code(), e.to_string(), expr.span))
            }
        }
    }

    fn call(&mut self, c: &FunctionCall, ctx: &Ctx) -> Eval<Value> {
        let registry = std::sync::Arc::clone(&self.registry);
        let Some(builtin) = registry.lookup(&c.name) else {
            return Err(fault("unknown-function", format!("unknown function `{}`", c.name), c.name_span));
        };
        if builtin.arity() != c.args.len() {
            return Err(fault("arity", format!("`{}` takes {} arguments", builtin.name, builtin.arity()), c.span));
        }
        let args: Vec<Value> = c.args.iter().map(|e| self.eval(e, ctx)).collect::<Eval<_>>()?;
        let spans: Vec<Span> = c.args.iter().map(|e| e.span).collect();
        let arg = Args { values: &args, spans: &spans };

        match builtin.name {
            "Move" => {
                let id = self.target(&arg, 0, true)?;
                let speed = self.speed(&arg, 1)?;
                let dir = arg.vec3(2)?;
                let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
                if norm > 0.0 && speed > 0.0 {
                    let step = speed * self.config.dt;
                    let p = self.position_mut(&id);
                    for i in 0..3 {
                        p[i] += dir[i] / norm * step;
                    }
                }
                Ok(Value::Null)
            }
            "ChangeColor" => {
                let id = self.target(&arg, 0, false)?;
                let color = arg.vec3(1)?;
                if !color.iter().all(|x| (0.0..=1.0).contains(x)) {
                    return Err(fault("invalid-argument", format!("color components must be in [0,1], got {color:?}"), spans[1]));
                }
                let o = self.objects.get_mut(&id).expect("target checked");
                if o.color != Some(color) {
                    o.color = Some(color);
                    self.emit(EventKind::ColorChanged { id, color });
                }
                Ok(Value::Null)
            }
            "GetPosition" => {
                let id = self.target(&arg, 0, true)?;
                Ok(Value::vector(*self.position_mut(&id)))
            }
            "PlaySound" => {
                let sound = arg.text(0)?.to_string();
                self.emit(EventKind::SoundPlayed { sound });
                Ok(Value::Null)
            }
            "Disappear" | "Appear" => {
                let id = self.target(&arg, 0, false)?;
                let visible = builtin.name == "Appear";
                let o = self.objects.get_mut(&id).expect("target checked");
                if o.visible != visible {
                    o.visible = visible;
                    self.emit(if visible { EventKind::ObjectAppeared { id } } else { EventKind::ObjectDisappeared { id } });
                }
                Ok(Value::Null)
            }
            "TimeSinceStart" => Ok(Value::Number(self.time_since_start())),
            "CreateObject" => {
                let asset_type = arg.text(0)?.trim().to_string();
                if asset_type.is_empty() {
                    return Err(fault("invalid-argument", "asset type must not be empty", spans[0]));
                }
                let id = self.fresh_id(&asset_type);
                self.objects.insert(
                    id.clone(),
                    ObjectState {
                        id: id.clone(),
                        is_button: asset_type.eq_ignore_ascii_case("button"),
                        asset_type: asset_type.clone(),
                        position: DEFAULT_SPAWN_POSITION,
                        orientation: DEFAULT_ORIENTATION,
                        size: DEFAULT_SIZE,
                        color: None,
                        visible: true,
                    },
                );
                self.emit(EventKind::ObjectCreated { id: id.clone(), asset_type });
                Ok(Value::Text(id))
            }
            "DeleteObject" => {
                let id = self.target(&arg, 0, false)?;
                self.objects.shift_remove(&id);
                self.contacts.retain(|(a, b)| *a != id && *b != id);
                self.emit(EventKind::ObjectDeleted { id });
                Ok(Value::Null)
            }
            "SetPosition" => {
                let id = self.target(&arg, 0, true)?;
                let position = arg.vec3(1)?;
                *self.position_mut(&id) = position;
                self.emit(EventKind::ObjectRelocated { id, position });
                Ok(Value::Null)
            }
            "Rotate" => {
                let id = self.target(&arg, 0, false)?;
                let delta = arg.vec3(1)?;
                let o = self.objects.get_mut(&id).expect("target checked");
                for (axis, d) in o.orientation.iter_mut().zip(delta) {
                    *axis += d;
                }
                Ok(Value::Null)
            }
            "RandomPosition" => {
                let b = self.config.spawn_box;
                let p: [f64; 3] = std::array::from_fn(|i| {
                    let u: f64 = self.rng.random();
                    b.min[i] + (b.max[i] - b.min[i]) * u
                });
                Ok(Value::vector(p))
            }
            "CollisionObject" => {
                let Some(bound) = ctx.bound else {
                    return Err(fault("invalid-argument", "CollisionObject is only available inside onCollision", c.span));
                };
                match &args[0] {
                    Value::Number(n) if *n == 0.0 || *n == 1.0 => Ok(Value::Text(bound[*n as usize].clone())),
                    v => Err(fault("invalid-argument", format!("CollisionObject index must be 0 or 1, got {v}"), spans[0])),
                }
            }
            other => unreachable!("built-in `{other}` has no implementation"),
        }
    }

    /// Resolves an object-id argument. `player_ok` admits the player avatar.
    fn target(&self, arg: &Args, i: usize, player_ok: bool) -> Eval<String> {
        let id = arg.text(i)?;
        if (player_ok && id == PLAYER_ID) || self.objects.contains_key(id) {
            Ok(id.to_string())
        } else {
            Err(fault("unknown-object", format!("no object `{id}` in the scene"), arg.spans[i]))
        }
    }

    fn speed(&self, arg: &Args, i: usize) -> Eval<f64> {
        match &arg.values[i] {
            Value::Text(name) => self
                .config
                .speed(name)
                .ok_or_else(|| fault("invalid-argument", format!("unknown speed `{name}`"), arg.spans[i])),
            Value::Number(n) if n.is_finite() && *n >= 0.0 => Ok(*n),
            v => Err(fault("type-mismatch", format!("speed must be text or a non-negative number, got {v}"), arg.spans[i])),
        }
    }

    fn position_mut(&mut self, id: &str) -> &mut Vec3 {
        if id == PLAYER_ID {
            &mut self.player_position
        } else {
            &mut self.objects.get_mut(id).expect("target checked").position
        }
    }

    fn fresh_id(&mut self, asset_type: &str) -> String {
        let prefix = id_prefix(asset_type);
        let counter = self.id_counters.entry(prefix.clone()).or_insert(0);
        loop {
            *counter += 1;
            let id = format!("{prefix}{counter}");
            if !self.objects.contains_key(&id) && id != PLAYER_ID {
                return id;
            }
        }
    }
}

struct Args<'a> {
    values: &'a [Value],
    spans: &'a [Span],
}

impl Args<'_> {
    fn text(&self, i: usize) -> Eval<&str> {
        match &self.values[i] {
            Value::Text(t) => Ok(t),
            v => Err(fault("type-mismatch", format!("expected text, got {}", v.kind()), self.spans[i])),
        }
    }

    fn vec3(&self, i: usize) -> Eval<Vec3> {
        self.values[i]
            .as_vec3()
            .ok_or_else(|| fault("type-mismatch", format!("expected a 3-number vector, got {}", self.values[i]), self.spans[i]))
    }
}

fn constant(c: &Constant) -> Value {
    match c {
        Constant::Integer(_) | Constant::Float(_) => Value::Number(c.as_number().expect("lexer guarantees digits")),
        Constant::Str(s) => Value::Text(s.clone()),
        Constant::Bool(b) => Value::Bool(*b),
        Constant::Null => Value::Null,
    }
}
