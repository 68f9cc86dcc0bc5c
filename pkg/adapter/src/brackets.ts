/**
 * Labeled-bracketing reader.
 *
 * Constituency parsers emit classic bracket strings over the tagged tokens,
 * e.g. "(S (NP (DT the) (NN dog)) (VP (VBZ barks)))".  This converts one
 * into the span tree the bundle format stores: spans are derived from leaf
 * order, phrase labels go through the constituent tag mapping, and leaves
 * take the structural label "X" (the token's POS lives on the token, not in
 * the tree).  Spans tile by construction, matching the bundle invariants.
 */

import { AdapterError } from "./errors.js";
import { TagMapper } from "./tagmap.js";
import { BundleTreeNode } from "./types.js";

type SExpr = { label: string; children: SExpr[]; surface?: string };

function tokenize(bracket: string): string[] {
  return bracket
    .replace(/\(/g, " ( ")
    .replace(/\)/g, " ) ")
    .split(/\s+/)
    .filter((t) => t.length > 0);
}

function parseSExpr(tokens: string[]): SExpr {
  let pos = 0;

  function parseNode(): SExpr {
    if (tokens[pos] !== "(") {
      throw new AdapterError(`bracket parse: expected '(' at token ${pos}`);
    }
    pos += 1;
    const label = tokens[pos];
    if (label === undefined || label === "(" || label === ")") {
      throw new AdapterError(`bracket parse: missing node label at token ${pos}`);
    }
    pos += 1;
    const node: SExpr = { label, children: [] };
    while (tokens[pos] !== ")") {
      if (pos >= tokens.length) {
        throw new AdapterError("bracket parse: unbalanced brackets");
      }
      if (tokens[pos] === "(") {
        if (node.surface !== undefined) {
          throw new AdapterError(
            `bracket parse: node ${label} mixes surface text and children`);
        }
        node.children.push(parseNode());
      } else {
        // pre-terminal: (TAG surface)
        if (node.surface !== undefined || node.children.length > 0) {
          throw new AdapterError(
            `bracket parse: node ${label} mixes surface text and children`);
        }
        node.surface = tokens[pos];
        pos += 1;
      }
    }
    pos += 1;
    return node;
  }

  const root = parseNode();
  if (pos !== tokens.length) {
    throw new AdapterError("bracket parse: trailing content after root node");
  }
  return root;
}

/**
 * Convert a bracket string to a bundle span tree.  `surfaces` are the
 * sentence tokens in order; leaf surfaces must match them exactly, which
 * catches parsers that retokenize.
 */
export function bracketToTree(bracket: string, surfaces: string[],
  mapper: TagMapper): BundleTreeNode {
  const root = parseSExpr(tokenize(bracket));
  let cursor = 0;

  function build(node: SExpr): BundleTreeNode {
    if (node.surface !== undefined) {
      const expected = surfaces[cursor];
      if (expected === undefined) {
        throw new AdapterError(
          `bracket has more leaves than the sentence has tokens (${surfaces.length})`);
      }
      if (node.surface !== expected) {
        throw new AdapterError(
          `bracket leaf ${cursor} is ${JSON.stringify(node.surface)}, `
          + `token is ${JSON.stringify(expected)}`);
      }
      const span: [number, number] = [cursor, cursor + 1];
      cursor += 1;
      return { label: "X", span };
    }
    if (node.children.length === 0) {
      throw new AdapterError(`bracket node ${node.label} has neither surface nor children`);
    }
    const children = node.children.map(build);
    const first = children[0]!;
    const last = children[children.length - 1]!;
    return {
      label: mapper.map(node.label),
      span: [first.span[0], last.span[1]],
      children,
    };
  }

  const tree = build(root);
  if (cursor !== surfaces.length) {
    throw new AdapterError(
      `bracket covers ${cursor} tokens, sentence has ${surfaces.length}`);
  }
  return tree;
}
