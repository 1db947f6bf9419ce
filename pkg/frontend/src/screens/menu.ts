// Main menu: exactly the four activities. Ones above the learner's phase
// render disabled but stay visible, so children can see what comes next.

import { AppState, ACTIVITIES, Activity, Route, isUnlocked } from "../state.js";

const LABELS: Record<Activity, string> = {
  SINGLE_WORD: "Tap and listen",
  PECS_BOOK: "Sentence book",
  DIFFERENTIATE: "Find the match",
  QA: "Questions",
};

const TARGETS: Record<Activity, Route> = {
  SINGLE_WORD: "CATEGORY_LIST",
  PECS_BOOK: "PECS_BOOK",
  DIFFERENTIATE: "DIFFERENTIATE",
  QA: "QA",
};

export function renderMenu(state: AppState): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen main-menu";
  const phase = state.current.learner?.current_phase ?? 1;
  root.innerHTML = `
    <h2>What shall we do?</h2>
    <div class="menu-grid" data-role="activities"></div>
    <button class="scores-link" data-action="scores">My stars</button>
  `;
  const grid = root.querySelector<HTMLElement>("[data-role=activities]")!;
  for (const activity of ACTIVITIES) {
    const button = document.createElement("button");
    button.className = "activity-button";
    button.dataset.activity = activity;
    button.textContent = LABELS[activity];
    if (!isUnlocked(activity, phase)) {
      button.disabled = true;
      button.title = "Keep practicing to unlock this!";
    } else {
      button.addEventListener("click", () => state.navigate(TARGETS[activity]));
    }
    grid.appendChild(button);
  }
  root
    .querySelector("[data-action=scores]")!
    .addEventListener("click", () => state.navigate("SCORES"));
  return root;
}
