import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Api } from "../src/api.js";
import { AppState } from "../src/state.js";
import { clearPlaybackLog, playCue, playbackEvents } from "../src/audio.js";
import { tapCard } from "../src/screens/categories.js";
import { attemptResult, card, installFetch } from "./helpers.js";

beforeEach(() => clearPlaybackLog());
afterEach(() => vi.unstubAllGlobals());

describe("audio cues", () => {
  it("tapping a card logs a playback event carrying the card's cue", async () => {
    installFetch((call) => {
      if (call.path === "/attempts")
        return {
          status: 201,
          body: attemptResult({
            activity: "SINGLE_WORD",
            stars_awarded: 0,
            star_total: 0,
            tap: { card_id: "apple", word: "apple", audio: "audio/apple.wav" },
          }),
        };
      return undefined;
    });
    const api = new Api("");
    const state = new AppState();
    await tapCard(api, state, card("apple", "apple"));

    expect(playbackEvents.length).toBe(1);
    expect(playbackEvents[0].cardId).toBe("apple");
    expect(playbackEvents[0].url).toBe("/assets/audio/apple.wav");
  });

  it("still posts the attempt for a silent card, with no playback event", async () => {
    const calls = installFetch((call) => {
      if (call.path === "/attempts")
        return {
          status: 201,
          body: attemptResult({ activity: "SINGLE_WORD", stars_awarded: 0, star_total: 0 }),
        };
      return undefined;
    });
    const api = new Api("");
    const state = new AppState();
    await tapCard(api, state, card("hush", "hush", { audio: null }));

    expect(playbackEvents.length).toBe(0);
    expect(calls.length).toBe(1);
    expect(calls[0].body).toEqual({ activity: "SINGLE_WORD", card_id: "hush" });
  });

  it("a new cue replaces the previous one", () => {
    playCue("apple", "/assets/audio/apple.wav");
    playCue("dog", "/assets/audio/dog.wav");
    expect(playbackEvents.map((event) => event.cardId)).toEqual(["apple", "dog"]);
  });
});
