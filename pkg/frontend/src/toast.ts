// Corner toasts. Nothing here blocks input; the stack just fades.

export function showToast(
  message: string,
  kind: 'info' | 'error' = 'info',
  ttlMs = 4000,
): HTMLElement {
  let stack = document.getElementById('toasts');
  if (!stack) {
    stack = document.createElement('div');
    stack.id = 'toasts';
    document.body.appendChild(stack);
  }
  const toast = document.createElement('div');
  toast.className = `toast toast-${kind}`;
  toast.setAttribute('role', 'status');
  toast.textContent = message;
  stack.appendChild(toast);
  setTimeout(() => toast.remove(), ttlMs);
  return toast;
}
