use std::collections::BTreeSet;

use super::model::{SceneSpec, PLAYER_ID};
use crate::runtime::{BuiltinRegistry, ParamKind};
use crate::syntax::{codes, Constant, Diagnostic, ExprKind, ListenerKind};

/// One warning per string literal passed as an object-id argument that names
/// no object in `spec`. Listener type arguments are also checked unless they
/// match an asset type present in the scene. Spans are relative to each
/// block's source text, and the message names the block.
pub fn check_references(spec: &SceneSpec, registry: &BuiltinRegistry) -> Vec<Diagnostic> {
    let ids: BTreeSet<&str> = spec.objects.iter().map(|o| o.id.as_str()).collect();
    let types: BTreeSet<&str> = spec.objects.iter().map(|o| o.asset_type.as_str()).collect();
    let known = |name: &str| name == PLAYER_ID || ids.contains(name);
    let mut out = Vec::new();
    for block in &spec.scripts {
        for call in block.ast.calls() {
            let Some(builtin) = registry.lookup(&call.name) else { continue };
            for (param, arg) in builtin.params.iter().zip(&call.args) {
                if *param != ParamKind::ObjectId {
                    continue;
                }
                if let ExprKind::Constant(Constant::Str(name)) = &arg.kind {
                    if !known(name) {
                        out.push(dangling(&block.block_id, name, arg.span));
                    }
                }
            }
        }
        for listener in block.ast.listeners() {
            if !matches!(listener.kind, ListenerKind::OnCollision | ListenerKind::OnButtonPress) {
                continue;
            }
            for arg in &listener.type_args {
                if let Some(name) = arg.as_str() {
                    if !known(name) && !types.contains(name) {
                        out.push(dangling(&block.block_id, name, listener.span));
                    }
                }
            }
        }
    }
    out
}

fn dangling(block_id: &str, name: &str, span: crate::syntax::Span) -> Diagnostic {
    Diagnostic::warning(
        codes::DANGLING_REFERENCE,
        format!("{block_id}: `{name}` does not name an object in the scene"),
        span,
    )
}
