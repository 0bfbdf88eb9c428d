using System;
using ShopDemo.Business.Accounts;
using ShopDemo.Data.Entities;
using ShopDemo.Web.Common;

namespace ShopDemo.Web.Account
{
    public class AccountPage : PageBase
    {
        private UserService users;

        public void RegisterUser()
        {
            User user = new User();
            int key = users.Register(user);
            this.Trace("registered");
        }
    }
}
