import { afterEach, describe, expect, it, vi } from "vitest";

import { Api } from "../src/api.js";
import { AppState } from "../src/state.js";
import { QaController, renderQa } from "../src/screens/qa.js";
import { attemptResult, card, flush, installFetch } from "./helpers.js";

afterEach(() => vi.unstubAllGlobals());

const TASK = {
  question_id: "question-4-11",
  prompt_text: "What do you want?",
  prompt_card: card("pizza", "pizza", { category: "Food" }),
  options: [card("dog", "dog"), card("pizza", "pizza"), card("to-run", "to run")],
  phase: 4,
  seed: 11,
};

describe("questions", () => {
  it("posts the chosen index and renders the server verdict", async () => {
    const calls = installFetch((call) => {
      if (call.path === "/tasks/qa") return { body: TASK };
      if (call.path === "/attempts")
        return {
          status: 201,
          body: attemptResult({ activity: "QA", stars_awarded: 1, star_total: 3 }),
        };
      return undefined;
    });
    const api = new Api("");
    const state = new AppState();
    const screen = renderQa(api, state, 11);
    await flush();
    const controller = (screen as HTMLElement & { controller: QaController }).controller;

    expect(screen.querySelector("[data-role=prompt]")!.textContent).toBe("What do you want?");
    expect(screen.querySelectorAll("[data-role=options] .card-tile").length).toBe(3);

    await controller.choose(1);

    expect(state.current.starTotal).toBe(3);
    const attempt = calls.find((c) => c.path === "/attempts")!;
    expect(attempt.body).toEqual({
      activity: "QA",
      task: { phase: 4, seed: 11 },
      chosen_index: 1,
    });
  });

  it("keeps the question open after a miss", async () => {
    installFetch((call) => {
      if (call.path === "/tasks/qa") return { body: TASK };
      if (call.path === "/attempts")
        return {
          status: 201,
          body: attemptResult({
            activity: "QA",
            correct: false,
            stars_awarded: 0,
            star_total: 0,
            feedback_text: "Try again! You were asked about pizza.",
          }),
        };
      return undefined;
    });
    const api = new Api("");
    const state = new AppState();
    const screen = renderQa(api, state, 11);
    await flush();
    const controller = (screen as HTMLElement & { controller: QaController }).controller;

    await controller.choose(0);
    expect(controller.answered).toBe(false);
    expect(screen.querySelector("[data-role=feedback]")!.textContent).toContain("pizza");
  });
});
