// @vitest-environment jsdom
import { describe, expect, it } from "vitest";
import { twice } from "../src/probe.js";
it("resolves js-suffixed ts imports", () => {
  expect(twice).toBe(84);
  document.body.innerHTML = "<div id='x'>hello</div>";
  expect(document.getElementById("x")!.textContent).toBe("hello");
});
