// Typed client for the learning service. Every screen talks to the server
// through this module; nothing in the UI computes correctness or stars.

export type CardInfo = {
  id: string;
  word: string;
  category: string;
  role: string;
  picture: string;
  audio: string | null;
};

export type LearnerInfo = {
  learner_id: string;
  username: string;
  account_role: "CHILD" | "PARENT" | "THERAPIST";
  demographics: Record<string, unknown>;
  current_phase: number;
  settings: { background_theme: string };
  created_at: number;
  linked_ids: string[];
};

export type StripVerdict = {
  status: "VALID" | "INCOMPLETE" | "INVALID";
  invalid_position: number | null;
  reason: string | null;
  text: string;
  audio: string[];
};

export type DiscriminationTask = {
  deck_id: string;
  task_id: string;
  category: string;
  n_options: number;
  seed: number;
  target: CardInfo;
  options: CardInfo[];
};

export type QuestionTask = {
  question_id: string;
  prompt_text: string;
  prompt_card: CardInfo;
  options: CardInfo[];
  phase: number;
  seed: number;
};

export type AttemptResult = {
  attempt_id: string;
  activity: string;
  correct: boolean;
  stars_awarded: number;
  feedback_text: string;
  timestamp: number;
  phase_advanced: boolean;
  current_phase: number;
  star_total: number;
  text?: string;
  tap?: { card_id: string; word: string; audio: string | null };
};

export type ProgressReport = {
  learner_id: string;
  star_total: number;
  current_phase: number;
  per_activity: Record<string, { attempts: number; correct: number; accuracy: number }>;
  per_category: Record<string, number>;
};

export type MessageInfo = {
  message_id: string;
  from: string;
  to: string;
  body: string;
  sent_at: number;
};

export class ApiError extends Error {
  code: string;
  status: number;

  constructor(code: string, detail: string, status: number) {
    super(detail);
    this.code = code;
    this.status = status;
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "Unknown";
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && body.error) {
      code = body.error.code ?? code;
      detail = body.error.detail ?? detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(code, detail, response.status);
}

export class Api {
  baseUrl: string;
  token: string | null = null;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  register(
    username: string,
    password: string,
    accountRole: string,
    linkedIds: string[] = [],
  ): Promise<{ learner: LearnerInfo }> {
    return this.request("POST", "/register", {
      username,
      password,
      account_role: accountRole,
      linked_ids: linkedIds,
    });
  }

  async login(username: string, password: string): Promise<LearnerInfo> {
    const out = await this.request<{ token: string; expires_at: number; learner: LearnerInfo }>(
      "POST",
      "/login",
      { username, password },
    );
    this.token = out.token;
    return out.learner;
  }

  async logout(): Promise<void> {
    await this.request("POST", "/logout", {});
    this.token = null;
  }

  me(): Promise<{ learner: LearnerInfo }> {
    return this.request("GET", "/me");
  }

  cards(category?: string): Promise<{ cards: CardInfo[] }> {
    const query = category ? `?category=${encodeURIComponent(category)}` : "";
    return this.request("GET", `/cards${query}`);
  }

  validateStrip(cardIds: string[]): Promise<StripVerdict> {
    return this.request("POST", "/strips/validate", { card_ids: cardIds });
  }

  predict(prefix: string[], k: number): Promise<{ suggestions: CardInfo[] }> {
    const query = `?prefix=${encodeURIComponent(prefix.join(","))}&k=${k}`;
    return this.request("GET", `/predict${query}`);
  }

  differentiateTask(category: string, seed: number): Promise<DiscriminationTask> {
    return this.request("POST", "/tasks/differentiate", { category, n_options: 3, seed });
  }

  qaTask(seed: number, phase?: number): Promise<QuestionTask> {
    return this.request("POST", "/tasks/qa", phase === undefined ? { seed } : { seed, phase });
  }

  tapAttempt(cardId: string): Promise<AttemptResult> {
    return this.request("POST", "/attempts", { activity: "SINGLE_WORD", card_id: cardId });
  }

  stripAttempt(cardIds: string[]): Promise<AttemptResult> {
    return this.request("POST", "/attempts", { activity: "PECS_BOOK", card_ids: cardIds });
  }

  differentiateAttempt(
    task: { category: string; n_options: number; seed: number },
    chosen: string,
  ): Promise<AttemptResult> {
    return this.request("POST", "/attempts", { activity: "DIFFERENTIATE", task, chosen });
  }

  qaAttempt(task: { phase: number; seed: number }, chosenIndex: number): Promise<AttemptResult> {
    return this.request("POST", "/attempts", {
      activity: "QA",
      task,
      chosen_index: chosenIndex,
    });
  }

  progress(learnerId: string): Promise<{ progress: ProgressReport }> {
    return this.request("GET", `/progress/${learnerId}`);
  }

  updateSettings(learnerId: string, theme: string): Promise<{ learner: LearnerInfo }> {
    return this.request("PUT", `/settings/${learnerId}`, { background_theme: theme });
  }

  sendMessage(to: string, body: string): Promise<{ message: MessageInfo }> {
    return this.request("POST", "/messages", { to, body });
  }

  messages(peer: string, since?: number): Promise<{ messages: MessageInfo[] }> {
    const extra = since === undefined ? "" : `&since=${since}`;
    return this.request("GET", `/messages?peer=${encodeURIComponent(peer)}${extra}`);
  }

  assetUrl(ref: string | null): string | null {
    return ref ? `${this.baseUrl}/assets/${ref}` : null;
  }
}
