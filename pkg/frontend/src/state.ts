// Screen state: the current route, session, active learner, and star count.
// Routes behind the login wall are unreachable without a token.

import type { LearnerInfo } from "./api.js";
import type { Theme } from "./theme.js";

export const ROUTES = [
  "REGISTER",
  "LOGIN",
  "MAIN_MENU",
  "CATEGORY_LIST",
  "CATEGORY_CARDS",
  "PECS_BOOK",
  "DIFFERENTIATE",
  "QA",
  "SCORES",
] as const;
export type Route = (typeof ROUTES)[number];

const PUBLIC_ROUTES: Route[] = ["REGISTER", "LOGIN"];

export const ACTIVITIES = ["SINGLE_WORD", "PECS_BOOK", "DIFFERENTIATE", "QA"] as const;
export type Activity = (typeof ACTIVITIES)[number];

// Display gating only; the server accepts attempts for any activity.
export const ACTIVITY_MIN_PHASE: Record<Activity, number> = {
  SINGLE_WORD: 1,
  DIFFERENTIATE: 2,
  PECS_BOOK: 3,
  QA: 4,
};

export function isUnlocked(activity: Activity, phase: number): boolean {
  return ACTIVITY_MIN_PHASE[activity] <= phase;
}

export type ScreenState = {
  route: Route;
  token: string | null;
  learner: LearnerInfo | null;
  theme: Theme;
  starTotal: number;
  category: string | null;
};

type Listener = (state: ScreenState) => void;

export class AppState {
  private state: ScreenState;
  private listeners: Listener[] = [];

  constructor(theme: Theme = "LIGHT") {
    this.state = {
      route: "LOGIN",
      token: null,
      learner: null,
      theme,
      starTotal: 0,
      category: null,
    };
  }

  get current(): ScreenState {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  navigate(route: Route): boolean {
    if (!this.state.token && !PUBLIC_ROUTES.includes(route)) return false;
    this.state = { ...this.state, route };
    this.emit();
    return true;
  }

  signIn(token: string, learner: LearnerInfo): void {
    this.state = { ...this.state, token, learner, route: "MAIN_MENU" };
    this.emit();
  }

  signOut(): void {
    this.state = {
      ...this.state,
      token: null,
      learner: null,
      starTotal: 0,
      category: null,
      route: "LOGIN",
    };
    this.emit();
  }

  setLearner(learner: LearnerInfo): void {
    this.state = { ...this.state, learner };
    this.emit();
  }

  setStars(total: number): void {
    this.state = { ...this.state, starTotal: total };
    this.emit();
  }

  setCategory(category: string | null): void {
    this.state = { ...this.state, category };
    this.emit();
  }

  setTheme(theme: Theme): void {
    this.state = { ...this.state, theme };
    this.emit();
  }
}
