// App bootstrap: one state store, one API client, and a render loop that
// swaps the active screen when the route changes.

import { Api } from "./api.js";
import { AppState } from "./state.js";
import { applyTheme, loadTheme } from "./theme.js";
import { renderLogin, renderRegister } from "./screens/auth.js";
import { renderMenu } from "./screens/menu.js";
import { renderCategoryList, renderCategoryCards } from "./screens/categories.js";
import { renderBook } from "./screens/book.js";
import { renderDifferentiate } from "./screens/differentiate.js";
import { renderQa } from "./screens/qa.js";
import { renderScores } from "./screens/scores.js";

export function boot(root: HTMLElement, api = new Api("")): AppState {
  const theme = loadTheme();
  applyTheme(theme);
  const state = new AppState(theme);

  const header = document.createElement("header");
  header.className = "top-bar";
  header.innerHTML = `
    <span class="app-name">Picture Pals</span>
    <span class="star-counter" data-role="star-counter" hidden>⭐ <b>0</b></span>
    <button class="home" data-action="home" hidden>Home</button>
  `;
  const main = document.createElement("main");
  root.append(header, main);

  header.querySelector("[data-action=home]")!.addEventListener("click", () => {
    state.navigate("MAIN_MENU");
  });

  let lastRoute = "";
  const draw = async () => {
    const s = state.current;
    const counter = header.querySelector<HTMLElement>("[data-role=star-counter]")!;
    counter.hidden = !s.token;
    counter.querySelector("b")!.textContent = String(s.starTotal);
    header.querySelector<HTMLElement>("[data-action=home]")!.hidden = !s.token;
    if (s.route === lastRoute) return;
    lastRoute = s.route;

    main.innerHTML = "";
    switch (s.route) {
      case "LOGIN":
        main.appendChild(renderLogin(api, state));
        break;
      case "REGISTER":
        main.appendChild(renderRegister(api, state));
        break;
      case "MAIN_MENU":
        main.appendChild(renderMenu(state));
        break;
      case "CATEGORY_LIST":
        main.appendChild(renderCategoryList(state));
        break;
      case "CATEGORY_CARDS": {
        const out = await api.cards(s.category ?? undefined);
        main.appendChild(renderCategoryCards(api, state, out.cards));
        break;
      }
      case "PECS_BOOK": {
        const out = await api.cards();
        main.appendChild(renderBook(api, state, out.cards));
        break;
      }
      case "DIFFERENTIATE":
        main.appendChild(
          renderDifferentiate(api, state, "Animals", Math.floor(Math.random() * 1_000_000)),
        );
        break;
      case "QA":
        main.appendChild(renderQa(api, state, Math.floor(Math.random() * 1_000_000)));
        break;
      case "SCORES": {
        const learner = s.learner;
        if (!learner) break;
        const out = await api.progress(learner.learner_id);
        state.setStars(out.progress.star_total);
        main.appendChild(renderScores(api, state, out.progress));
        break;
      }
    }
  };

  state.subscribe(() => void draw());
  void draw();
  return state;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app")!);
}
