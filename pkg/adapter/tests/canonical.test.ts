import { describe, expect, it } from "vitest";

import { canonicalJson } from "../src/canonical.js";

describe("canonicalJson", () => {
  it("sorts keys recursively and strips whitespace", () => {
    expect(canonicalJson({ b: 1, a: { d: 2, c: [3, { f: 4, e: 5 }] } }))
      .toBe('{"a":{"c":[3,{"e":5,"f":4}],"d":2},"b":1}');
  });

  it("is insensitive to key insertion order", () => {
    const one: Record<string, number> = {};
    one["x"] = 1;
    one["a"] = 2;
    const two: Record<string, number> = {};
    two["a"] = 2;
    two["x"] = 1;
    expect(canonicalJson(one)).toBe(canonicalJson(two));
  });

  it("drops undefined entries and keeps unicode literal", () => {
    expect(canonicalJson({ a: undefined, b: "ingénieur" }))
      .toBe('{"b":"ingénieur"}');
  });

  it("rejects unserializable values", () => {
    expect(() => canonicalJson({ f: () => 0 })).toThrow(TypeError);
  });
});
