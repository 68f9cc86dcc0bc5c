import { describe, expect, it } from "vitest";

import { bracketToTree } from "../src/brackets.js";
import { AdapterError } from "../src/errors.js";
import { TagMapper } from "../src/tagmap.js";

const mapper = new TagMapper("stub-en-constparser", "stub-en-const", "const", {
  S: "S", NP: "NP", VP: "VP", PP: "PP", ADJP: "AP", ADVP: "ADVP",
});

describe("bracketToTree", () => {
  it("derives spans from leaf order and labels leaves X", () => {
    const tree = bracketToTree(
      "(S (NP (DT the) (NN dog)) (VP (VBZ barks)) (. .))",
      ["the", "dog", "barks", "."], mapper);
    expect(tree).toEqual({
      label: "S",
      span: [0, 4],
      children: [
        {
          label: "NP", span: [0, 2],
          children: [
            { label: "X", span: [0, 1] },
            { label: "X", span: [1, 2] },
          ],
        },
        { label: "VP", span: [2, 3], children: [{ label: "X", span: [2, 3] }] },
        { label: "X", span: [3, 4] },
      ],
    });
  });

  it("maps internal labels through the constituent mapping", () => {
    const tree = bracketToTree("(ADJP (JJ big))", ["big"], mapper);
    expect(tree.label).toBe("AP");
  });

  it("rejects a leaf that disagrees with the sentence tokens", () => {
    expect(() => bracketToTree("(S (NN cat))", ["dog"], mapper))
      .toThrow(/leaf 0 is "cat", token is "dog"/);
  });

  it("rejects leaf counts that disagree with the sentence", () => {
    expect(() => bracketToTree("(S (NN dog))", ["dog", "barks"], mapper))
      .toThrow(/covers 1 tokens, sentence has 2/);
    expect(() => bracketToTree("(S (NN dog) (VBZ barks))", ["dog"], mapper))
      .toThrow(/more leaves than the sentence has tokens/);
  });

  it("rejects malformed bracketings", () => {
    expect(() => bracketToTree("(S (NP (DT the)", ["the"], mapper))
      .toThrow(/unbalanced/);
    expect(() => bracketToTree("(S (DT the)) trailing", ["the"], mapper))
      .toThrow(/trailing content/);
    expect(() => bracketToTree("(S (NP word (DT the)))", ["word", "the"], mapper))
      .toThrow(/mixes surface text and children/);
    expect(() => bracketToTree("(S (NP (DT the) word))", ["the", "word"], mapper))
      .toThrow(/mixes surface text and children/);
    expect(() => bracketToTree("(S ())", [], mapper)).toThrow(AdapterError);
  });
});
