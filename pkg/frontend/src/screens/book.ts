// Sentence structure book: drag (or tap) cards onto the strip, listen, and
// submit. Stars and verdicts come from the server; the strip only renders
// what the attempt response says. A prediction row under the strip reorders
// after every change, in exactly the order the API returned.

import { Api, CardInfo } from "../api.js";
import { AppState } from "../state.js";
import { playSequence } from "../audio.js";

export const STRIP_CAP = 6;
export const CAP_MESSAGE = "The strip is full. Try saying this sentence first!";

export class StripController {
  readonly api: Api;
  readonly state: AppState;
  strip: CardInfo[] = [];
  suggestions: CardInfo[] = [];
  feedback = "";
  starsAwarded = 0;
  onChange: () => void = () => {};

  constructor(api: Api, state: AppState) {
    this.api = api;
    this.state = state;
  }

  async place(card: CardInfo): Promise<boolean> {
    if (this.strip.length >= STRIP_CAP) {
      this.feedback = CAP_MESSAGE;
      this.onChange();
      return false;
    }
    this.strip.push(card);
    this.feedback = "";
    this.starsAwarded = 0;
    await this.refreshSuggestions();
    this.onChange();
    return true;
  }

  async removeAt(index: number): Promise<void> {
    this.strip.splice(index, 1);
    this.feedback = "";
    this.starsAwarded = 0;
    await this.refreshSuggestions();
    this.onChange();
  }

  listen(): void {
    playSequence(this.strip.map((card) => ({ cardId: card.id, url: card.audio })));
  }

  async refreshSuggestions(): Promise<void> {
    try {
      const out = await this.api.predict(
        this.strip.map((card) => card.id),
        3,
      );
      this.suggestions = out.suggestions;
    } catch {
      // a finished or broken strip has no next card; clear the row
      this.suggestions = [];
    }
  }

  async submit(): Promise<void> {
    const result = await this.api.stripAttempt(this.strip.map((card) => card.id));
    this.feedback = result.feedback_text;
    this.starsAwarded = result.stars_awarded;
    this.state.setStars(result.star_total);
    if (result.correct) {
      this.strip = [];
      await this.refreshSuggestions();
    }
    this.onChange();
  }
}

function cardTile(card: CardInfo, api: Api): HTMLElement {
  const tile = document.createElement("div");
  tile.className = "card-tile";
  tile.draggable = true;
  tile.dataset.cardId = card.id;
  const picture = api.assetUrl(card.picture);
  tile.innerHTML = `<img src="${picture}" alt="" draggable="false"><span>${card.word}</span>`;
  return tile;
}

export function renderBook(api: Api, state: AppState, cards: CardInfo[]): HTMLElement {
  const controller = new StripController(api, state);
  const byId = new Map(cards.map((card) => [card.id, card]));

  const root = document.createElement("section");
  root.className = "screen book-screen";
  root.innerHTML = `
    <h2>Sentence book</h2>
    <div class="strip" data-role="strip" aria-label="sentence strip"></div>
    <p class="feedback" data-role="feedback" aria-live="polite"></p>
    <div class="prediction-row" data-role="predictions" aria-label="suggestions"></div>
    <div class="actions">
      <button data-action="listen">Listen</button>
      <button data-action="submit">Say it!</button>
    </div>
    <div class="card-shelf" data-role="shelf"></div>
  `;

  const stripEl = root.querySelector<HTMLElement>("[data-role=strip]")!;
  const feedbackEl = root.querySelector<HTMLElement>("[data-role=feedback]")!;
  const predictionsEl = root.querySelector<HTMLElement>("[data-role=predictions]")!;
  const shelfEl = root.querySelector<HTMLElement>("[data-role=shelf]")!;

  for (const card of cards) {
    const tile = cardTile(card, api);
    tile.addEventListener("dragstart", (event) => {
      event.dataTransfer?.setData("text/plain", card.id);
    });
    tile.addEventListener("click", () => void controller.place(card));
    shelfEl.appendChild(tile);
  }

  stripEl.addEventListener("dragover", (event) => event.preventDefault());
  stripEl.addEventListener("drop", (event) => {
    event.preventDefault();
    const cardId = event.dataTransfer?.getData("text/plain");
    const card = cardId ? byId.get(cardId) : undefined;
    if (card) void controller.place(card);
  });

  root.querySelector("[data-action=listen]")!.addEventListener("click", () => controller.listen());
  root
    .querySelector("[data-action=submit]")!
    .addEventListener("click", () => void controller.submit());

  controller.onChange = () => {
    stripEl.innerHTML = "";
    controller.strip.forEach((card, index) => {
      const slot = cardTile(card, api);
      slot.classList.add("on-strip");
      slot.draggable = false;
      slot.title = "Remove";
      slot.addEventListener("click", () => void controller.removeAt(index));
      stripEl.appendChild(slot);
    });
    feedbackEl.textContent = controller.feedback;
    feedbackEl.classList.toggle("starred", controller.starsAwarded > 0);

    predictionsEl.innerHTML = "";
    for (const suggestion of controller.suggestions) {
      const chip = document.createElement("button");
      chip.className = "prediction-chip";
      chip.dataset.cardId = suggestion.id;
      chip.textContent = suggestion.word;
      chip.addEventListener("click", () => void controller.place(suggestion));
      predictionsEl.appendChild(chip);
    }
  };

  void controller.refreshSuggestions().then(controller.onChange);
  (root as HTMLElement & { controller?: StripController }).controller = controller;
  return root;
}
