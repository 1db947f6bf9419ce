// Differentiate: drag the matching picture onto the blank slot. The drop
// posts an attempt; the star or the retry feedback is whatever the server
// answered. Dropping outside the slot snaps back without logging anything.

import { Api, DiscriminationTask } from "../api.js";
import { AppState } from "../state.js";

export class MatchController {
  readonly api: Api;
  readonly state: AppState;
  task: DiscriminationTask | null = null;
  feedback = "";
  starsAwarded = 0;
  solved = false;
  onChange: () => void = () => {};

  constructor(api: Api, state: AppState) {
    this.api = api;
    this.state = state;
  }

  async newTask(category: string, seed: number): Promise<void> {
    this.task = await this.api.differentiateTask(category, seed);
    this.feedback = "";
    this.starsAwarded = 0;
    this.solved = false;
    this.onChange();
  }

  async drop(chosenCardId: string): Promise<void> {
    if (!this.task || this.solved) return;
    const { category, n_options, seed } = this.task;
    const result = await this.api.differentiateAttempt({ category, n_options, seed }, chosenCardId);
    this.feedback = result.feedback_text;
    this.starsAwarded = result.stars_awarded;
    this.solved = result.correct;
    this.state.setStars(result.star_total);
    this.onChange();
  }
}

export function renderDifferentiate(
  api: Api,
  state: AppState,
  category: string,
  seed: number,
): HTMLElement {
  const controller = new MatchController(api, state);

  const root = document.createElement("section");
  root.className = "screen match-screen";
  root.innerHTML = `
    <h2>Find the match</h2>
    <div class="match-slot" data-role="slot" aria-label="matching blank space">?</div>
    <p class="feedback" data-role="feedback" aria-live="polite"></p>
    <div class="match-options" data-role="options"></div>
    <button data-action="next">Another one</button>
  `;

  const slotEl = root.querySelector<HTMLElement>("[data-role=slot]")!;
  const optionsEl = root.querySelector<HTMLElement>("[data-role=options]")!;
  const feedbackEl = root.querySelector<HTMLElement>("[data-role=feedback]")!;

  slotEl.addEventListener("dragover", (event) => event.preventDefault());
  slotEl.addEventListener("drop", (event) => {
    event.preventDefault();
    const cardId = event.dataTransfer?.getData("text/plain");
    if (cardId) void controller.drop(cardId);
  });

  root.querySelector("[data-action=next]")!.addEventListener("click", () => {
    void controller.newTask(category, Math.floor(Math.random() * 1_000_000));
  });

  controller.onChange = () => {
    const task = controller.task;
    slotEl.textContent = task ? task.category : "?";
    slotEl.classList.toggle("solved", controller.solved);
    feedbackEl.textContent = controller.feedback;
    feedbackEl.classList.toggle("starred", controller.starsAwarded > 0);
    optionsEl.innerHTML = "";
    if (!task) return;
    for (const option of task.options) {
      const tile = document.createElement("div");
      tile.className = "card-tile";
      tile.draggable = true;
      tile.dataset.cardId = option.id;
      tile.innerHTML = `<img src="${api.assetUrl(option.picture)}" alt="" draggable="false"><span>${option.word}</span>`;
      tile.addEventListener("dragstart", (event) => {
        event.dataTransfer?.setData("text/plain", option.id);
      });
      tile.addEventListener("click", () => void controller.drop(option.id));
      optionsEl.appendChild(tile);
    }
  };

  void controller.newTask(category, seed);
  (root as HTMLElement & { controller?: MatchController }).controller = controller;
  return root;
}
