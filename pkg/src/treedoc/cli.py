"""treedoc command line: document lifecycle, export, AI ops, serve.

Every command works against a store directory (--dir, default TREEDOC_DIR
or the current directory). Data goes to stdout, diagnostics to stderr;
exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import ai_ops
from .diffing import compute_diff, render_diff
from .errors import TreeDocError
from .gateway import Gateway
from .linearize import linearize, render
from .mdio import import_markdown_file
from .store import DocumentStore

AI_COMMANDS = {
    "split": ai_ops.split_into_subsections,
    "outline": ai_ops.generate_outline_from_children,
    "paragraph": ai_ops.generate_paragraph,
    "outline-from-para": ai_ops.generate_outline_from_paragraph,
}


def engine_errors(fn):
    """Print domain failures as 'error: <code>: <detail>' and exit 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TreeDocError as exc:
            click.echo(f"error: {exc.code}: {exc.detail}", err=True)
            sys.exit(1)

    return wrapper


dir_option = click.option(
    "--dir", "store_dir", default=lambda: os.environ.get("TREEDOC_DIR", "."),
    show_default="TREEDOC_DIR or .", help="Store directory holding documents.")

doc_option = click.option("--doc", "doc_id", required=True,
                          help="Document id in the store.")


@click.group()
def main():
    """AI-assisted hierarchical documents."""


@main.command()
@click.argument("title")
@dir_option
@engine_errors
def new(title, store_dir):
    """Create a document with a single root node."""
    doc = DocumentStore(store_dir).create(title)
    click.echo(doc.doc_id)


@main.command("import")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@doc_option
@dir_option
@engine_errors
def import_(file, doc_id, store_dir):
    """Import a markdown file: headings become the node hierarchy."""
    store = DocumentStore(store_dir)
    doc = import_markdown_file(file, doc_id=doc_id)
    store.save(doc)
    click.echo(doc.doc_id)


@main.command()
@doc_option
@click.option("--node", "node_id", default=None, help="Linearize this subtree only.")
@click.option("--format", "fmt", type=click.Choice(["md", "html"]), default="md")
@click.option("--headings", type=click.Choice(["on", "off"]), default="on")
@dir_option
@engine_errors
def export(doc_id, node_id, fmt, headings, store_dir):
    """Render the linear document to stdout."""
    doc = DocumentStore(store_dir).load(doc_id)
    segments = linearize(doc.tree, node_id)
    policy = "titles-as-headings" if headings == "on" else "none"
    fmt_name = "markdown" if fmt == "md" else "html"
    scope = node_id if node_id is not None else doc.tree.root
    click.echo(render(doc.tree, segments, fmt_name, policy, scope_root=scope),
               nl=False)


@main.command()
@doc_option
@dir_option
@engine_errors
def tree(doc_id, store_dir):
    """ASCII outline of titles with ids."""
    doc = DocumentStore(store_dir).load(doc_id)
    t = doc.tree
    for node_id in t.preorder():
        node = t.nodes[node_id]
        indent = "  " * t.depth(node_id)
        title = node.title or "(untitled)"
        click.echo(f"{indent}{title} [{node.id}]")


@main.command()
@doc_option
@click.argument("keyword")
@dir_option
@engine_errors
def search(doc_id, keyword, store_dir):
    """Find nodes containing a keyword."""
    from .assistant import search_nodes

    doc = DocumentStore(store_dir).load(doc_id)
    for hit in search_nodes(doc.tree, keyword):
        click.echo(f"{hit.node_id}\t{hit.title}\t{hit.snippet}")


@main.command()
@click.argument("op", type=click.Choice(sorted(AI_COMMANDS)))
@doc_option
@click.option("--node", "node_id", required=True)
@click.option("--prompt", "user_prompt", default=None,
              help="Extra instructions (paragraph op only).")
@dir_option
@engine_errors
def ai(op, doc_id, node_id, user_prompt, store_dir):
    """Run an AI editing button; prints the suggestion id and its diff."""
    store = DocumentStore(store_dir)
    doc = store.load(doc_id)
    gateway = Gateway.from_env()
    kwargs = {}
    if op == "paragraph" and user_prompt:
        kwargs["user_prompt"] = user_prompt
    suggestion = AI_COMMANDS[op](doc, node_id, gateway, **kwargs)
    store.save(doc)
    click.echo(suggestion.suggestion_id)
    if suggestion.kind == "new_content":
        old = doc.tree.nodes[suggestion.target].content
        click.echo(render_diff(compute_diff(old, suggestion.payload)))
    elif suggestion.kind == "new_children_batch":
        for item in suggestion.payload:
            click.echo(f"+ child: {item['title']}")


@main.command()
@doc_option
@click.option("--suggestion", "suggestion_id", required=True)
@click.option("--edited-file", type=click.Path(exists=True, dir_okay=False),
              default=None,
              help="Replace the payload before applying: raw markup for "
                   "content suggestions, plain text for titles, JSON for "
                   "child suggestions.")
@dir_option
@engine_errors
def accept(doc_id, suggestion_id, edited_file, store_dir):
    """Apply a pending suggestion to the document."""
    store = DocumentStore(store_dir)
    doc = store.load(doc_id)
    edited = None
    if edited_file:
        text = open(edited_file, encoding="utf-8").read()
        kind = doc.suggestions.get(suggestion_id).kind
        if kind in ("new_child", "new_children_batch"):
            edited = json.loads(text)
        elif kind == "new_title":
            edited = text.strip()
        else:
            edited = text
    change = doc.apply_suggestion(suggestion_id, edited)
    store.save(doc)
    click.echo(f"accepted {suggestion_id}: {change.kind} on "
               f"{', '.join(change.nodes)}")


@main.command()
@doc_option
@click.option("--suggestion", "suggestion_id", required=True)
@dir_option
@engine_errors
def reject(doc_id, suggestion_id, store_dir):
    """Discard a pending suggestion; the document is untouched."""
    store = DocumentStore(store_dir)
    doc = store.load(doc_id)
    doc.reject_suggestion(suggestion_id)
    store.save(doc)
    click.echo(f"rejected {suggestion_id}")


@main.command()
@doc_option
@click.option("--node", "node_id", required=True)
@dir_option
@engine_errors
def versions(doc_id, node_id, store_dir):
    """List a node's archived versions."""
    doc = DocumentStore(store_dir).load(doc_id)
    doc.tree.node(node_id)
    for v in doc.versions.list_for(node_id):
        click.echo(f"v{v.seq}\t{v.label}\t{v.title_snapshot}")


@main.command()
@doc_option
@click.option("--node", "node_id", required=True)
@click.option("--v", "seq", required=True, type=int)
@dir_option
@engine_errors
def restore(doc_id, node_id, seq, store_dir):
    """Set a node back to a version (the restore is archived too)."""
    store = DocumentStore(store_dir)
    doc = store.load(doc_id)
    doc.restore_version(node_id, seq)
    store.save(doc)
    click.echo(f"restored {node_id} to v{seq}")


@main.command()
@click.option("--addr", default=None, help="host:port (default TREEDOC_ADDR "
                                           "or 127.0.0.1:7340)")
@dir_option
def serve(addr, store_dir):
    """Run the HTTP API (and the web UI when frontend/dist exists)."""
    from .server import serve as run_server

    run_server(store_dir, addr)


if __name__ == "__main__":
    main()
