// Shared test scaffolding: a scripted fetch stub and canned payloads.

import { vi } from "vitest";
import type { CardInfo } from "../src/api.js";

export type Call = { method: string; path: string; body: unknown };

export type Responder = (call: Call) => { status?: number; body: unknown } | undefined;

export function installFetch(responder: Responder): Call[] {
  const calls: Call[] = [];
  const stub = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const call: Call = {
      method: init?.method ?? "GET",
      path,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    };
    calls.push(call);
    const out = responder(call);
    if (!out) throw new Error(`unmocked request: ${call.method} ${path}`);
    const status = out.status ?? 200;
    return {
      ok: status < 400,
      status,
      statusText: String(status),
      json: async () => out.body,
    } as Response;
  });
  vi.stubGlobal("fetch", stub);
  return calls;
}

export function card(id: string, word: string, overrides: Partial<CardInfo> = {}): CardInfo {
  return {
    id,
    word,
    category: "Core",
    role: "NOUN",
    picture: `pictures/${id}.svg`,
    audio: `audio/${id}.wav`,
    ...overrides,
  };
}

export function attemptResult(overrides: Record<string, unknown> = {}) {
  return {
    attempt_id: "a00000001",
    activity: "PECS_BOOK",
    correct: true,
    stars_awarded: 1,
    feedback_text: "Well done!",
    timestamp: 1000,
    phase_advanced: false,
    current_phase: 3,
    star_total: 1,
    ...overrides,
  };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
