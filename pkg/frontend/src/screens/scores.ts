// Scores: star total, per-activity accuracy bars, phase badge, and the
// theme switch. The theme persists locally and via the profile settings.

import { Api, ProgressReport } from "../api.js";
import { AppState } from "../state.js";
import { THEMES, Theme, setTheme } from "../theme.js";

export function renderScores(api: Api, state: AppState, report: ProgressReport): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen scores-screen";
  root.innerHTML = `
    <h2>My stars</h2>
    <p class="star-total">⭐ <span data-role="stars">${report.star_total}</span></p>
    <p class="phase-badge" data-role="phase">Phase ${report.current_phase}</p>
    <div class="accuracy-chart" data-role="chart"></div>
    <div class="theme-row" data-role="themes"></div>
  `;

  const chart = root.querySelector<HTMLElement>("[data-role=chart]")!;
  for (const [activity, cell] of Object.entries(report.per_activity)) {
    const row = document.createElement("div");
    row.className = "accuracy-row";
    const percent = Math.round(cell.accuracy * 100);
    row.innerHTML = `
      <span class="label">${activity}</span>
      <span class="bar"><span class="fill" style="width:${percent}%"></span></span>
      <span class="value">${cell.correct}/${cell.attempts}</span>
    `;
    chart.appendChild(row);
  }

  const themesEl = root.querySelector<HTMLElement>("[data-role=themes]")!;
  for (const theme of THEMES) {
    const button = document.createElement("button");
    button.className = "theme-button";
    button.dataset.themeChoice = theme;
    button.textContent = theme.replace("_", " ").toLowerCase();
    button.addEventListener("click", () => {
      setTheme(theme as Theme);
      state.setTheme(theme as Theme);
      const learner = state.current.learner;
      if (learner) void api.updateSettings(learner.learner_id, theme);
    });
    themesEl.appendChild(button);
  }
  return root;
}
