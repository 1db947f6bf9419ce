// Category list and the tap-to-hear card grid. Tapping a card cues its
// audio and logs a SINGLE_WORD attempt; silent cards only highlight.

import { Api, CardInfo } from "../api.js";
import { AppState } from "../state.js";
import { playCue } from "../audio.js";

export const CATEGORY_ORDER = [
  "Animals",
  "Food",
  "Colours",
  "Shapes",
  "Fruits",
  "Emotions",
  "Motions",
  "Vegetables",
];

export function renderCategoryList(state: AppState): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen category-list";
  root.innerHTML = `<h2>Pick a category</h2><div class="category-grid"></div>`;
  const grid = root.querySelector<HTMLElement>(".category-grid")!;
  for (const category of CATEGORY_ORDER) {
    const button = document.createElement("button");
    button.className = "category-button";
    button.textContent = category;
    button.addEventListener("click", () => {
      state.setCategory(category);
      state.navigate("CATEGORY_CARDS");
    });
    grid.appendChild(button);
  }
  return root;
}

export async function tapCard(api: Api, state: AppState, card: CardInfo): Promise<void> {
  playCue(card.id, api.assetUrl(card.audio));
  const result = await api.tapAttempt(card.id);
  state.setStars(result.star_total);
  if (result.phase_advanced && state.current.learner) {
    state.setLearner({ ...state.current.learner, current_phase: result.current_phase });
  }
}

export function renderCategoryCards(api: Api, state: AppState, cards: CardInfo[]): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen category-cards";
  const category = state.current.category ?? "";
  root.innerHTML = `<h2>${category}</h2><div class="card-grid" data-role="grid"></div>`;
  const grid = root.querySelector<HTMLElement>("[data-role=grid]")!;

  for (const card of cards) {
    const tile = document.createElement("button");
    tile.className = "card-tile big";
    tile.dataset.cardId = card.id;
    tile.innerHTML = `<img src="${api.assetUrl(card.picture)}" alt=""><span>${card.word}</span>`;
    tile.addEventListener("click", () => {
      tile.classList.add("highlight");
      setTimeout(() => tile.classList.remove("highlight"), 600);
      void tapCard(api, state, card);
    });
    grid.appendChild(tile);
  }
  return root;
}
