// Question and answer: a spoken prompt, a picture, three choices. The chosen
// index goes to the server; whatever it judges comes back as feedback.

import { Api, QuestionTask } from "../api.js";
import { AppState } from "../state.js";

export class QaController {
  readonly api: Api;
  readonly state: AppState;
  task: QuestionTask | null = null;
  feedback = "";
  starsAwarded = 0;
  answered = false;
  onChange: () => void = () => {};

  constructor(api: Api, state: AppState) {
    this.api = api;
    this.state = state;
  }

  async newTask(seed: number): Promise<void> {
    this.task = await this.api.qaTask(seed);
    this.feedback = "";
    this.starsAwarded = 0;
    this.answered = false;
    this.onChange();
  }

  async choose(index: number): Promise<void> {
    if (!this.task || this.answered) return;
    const result = await this.api.qaAttempt(
      { phase: this.task.phase, seed: this.task.seed },
      index,
    );
    this.feedback = result.feedback_text;
    this.starsAwarded = result.stars_awarded;
    this.answered = result.correct;
    this.state.setStars(result.star_total);
    this.onChange();
  }
}

export function renderQa(api: Api, state: AppState, seed: number): HTMLElement {
  const controller = new QaController(api, state);

  const root = document.createElement("section");
  root.className = "screen qa-screen";
  root.innerHTML = `
    <h2 data-role="prompt"></h2>
    <div class="qa-prompt-card" data-role="prompt-card"></div>
    <p class="feedback" data-role="feedback" aria-live="polite"></p>
    <div class="qa-options" data-role="options"></div>
    <button data-action="next">Next question</button>
  `;

  const promptEl = root.querySelector<HTMLElement>("[data-role=prompt]")!;
  const promptCardEl = root.querySelector<HTMLElement>("[data-role=prompt-card]")!;
  const optionsEl = root.querySelector<HTMLElement>("[data-role=options]")!;
  const feedbackEl = root.querySelector<HTMLElement>("[data-role=feedback]")!;

  root.querySelector("[data-action=next]")!.addEventListener("click", () => {
    void controller.newTask(Math.floor(Math.random() * 1_000_000));
  });

  controller.onChange = () => {
    const task = controller.task;
    feedbackEl.textContent = controller.feedback;
    feedbackEl.classList.toggle("starred", controller.starsAwarded > 0);
    optionsEl.innerHTML = "";
    if (!task) return;
    promptEl.textContent = task.prompt_text;
    promptCardEl.innerHTML = `<img src="${api.assetUrl(task.prompt_card.picture)}" alt="${task.prompt_card.word}">`;
    task.options.forEach((option, index) => {
      const tile = document.createElement("button");
      tile.className = "card-tile";
      tile.dataset.cardId = option.id;
      tile.innerHTML = `<img src="${api.assetUrl(option.picture)}" alt="" draggable="false"><span>${option.word}</span>`;
      tile.addEventListener("click", () => void controller.choose(index));
      optionsEl.appendChild(tile);
    });
  };

  void controller.newTask(seed);
  (root as HTMLElement & { controller?: QaController }).controller = controller;
  return root;
}
