// Register and login forms.

import { Api, ApiError } from "../api.js";
import { AppState } from "../state.js";

function showError(root: HTMLElement, error: unknown): void {
  const box = root.querySelector<HTMLElement>("[data-role=error]")!;
  box.textContent = error instanceof ApiError ? error.message : "Something went wrong";
}

export function renderLogin(api: Api, state: AppState): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen auth-screen";
  root.innerHTML = `
    <h2>Welcome back!</h2>
    <form data-role="form">
      <input name="username" placeholder="Name" autocomplete="username" required>
      <input name="password" type="password" placeholder="Secret word" autocomplete="current-password" required>
      <button type="submit">Let's go</button>
    </form>
    <p class="error" data-role="error" aria-live="polite"></p>
    <button class="switch" data-action="to-register">New here? Sign up</button>
  `;
  root.querySelector<HTMLFormElement>("[data-role=form]")!.addEventListener("submit", (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const username = (form.elements.namedItem("username") as HTMLInputElement).value;
    const password = (form.elements.namedItem("password") as HTMLInputElement).value;
    api
      .login(username, password)
      .then((learner) => state.signIn(api.token!, learner))
      .catch((error) => showError(root, error));
  });
  root
    .querySelector("[data-action=to-register]")!
    .addEventListener("click", () => state.navigate("REGISTER"));
  return root;
}

export function renderRegister(api: Api, state: AppState): HTMLElement {
  const root = document.createElement("section");
  root.className = "screen auth-screen";
  root.innerHTML = `
    <h2>Join in!</h2>
    <form data-role="form">
      <input name="username" placeholder="Name" autocomplete="username" required>
      <input name="password" type="password" placeholder="Secret word (8+ letters)" required>
      <select name="role">
        <option value="CHILD">Child</option>
        <option value="PARENT">Parent</option>
        <option value="THERAPIST">Therapist</option>
      </select>
      <button type="submit">Sign up</button>
    </form>
    <p class="error" data-role="error" aria-live="polite"></p>
    <button class="switch" data-action="to-login">Already joined? Log in</button>
  `;
  root.querySelector<HTMLFormElement>("[data-role=form]")!.addEventListener("submit", (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const username = (form.elements.namedItem("username") as HTMLInputElement).value;
    const password = (form.elements.namedItem("password") as HTMLInputElement).value;
    const role = (form.elements.namedItem("role") as HTMLSelectElement).value;
    api
      .register(username, password, role)
      .then(() => api.login(username, password))
      .then((learner) => state.signIn(api.token!, learner))
      .catch((error) => showError(root, error));
  });
  root
    .querySelector("[data-action=to-login]")!
    .addEventListener("click", () => state.navigate("LOGIN"));
  return root;
}
